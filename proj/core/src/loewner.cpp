#include "schlicht/loewner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "schlicht/error.hpp"
#include "schlicht/parallel.hpp"

namespace schlicht::loewner {

DrivingFunction DrivingFunction::constant(Complex kappa) {
    if (std::abs(std::abs(kappa) - 1.0) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "driving value must be unimodular");
    DrivingFunction d;
    d.limit_ = kappa;
    return d;
}

DrivingFunction DrivingFunction::tabulated(std::vector<double> times, std::vector<Complex> values) {
    if (times.empty() || times.size() != values.size())
        throw Error(ErrorCode::InvalidArgument, "driving table needs matching nonempty times and values");
    DrivingFunction d;
    d.angles_.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (std::abs(std::abs(values[k]) - 1.0) > 1e-12)
            throw Error(ErrorCode::InvalidArgument, "driving value must be unimodular");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "driving times must increase");
        double angle = std::arg(values[k]);
        if (k > 0) angle = d.angles_.back() + std::remainder(angle - d.angles_.back(), 2.0 * std::numbers::pi);
        d.angles_.push_back(angle);
    }
    d.times_ = std::move(times);
    d.limit_ = values.back();
    return d;
}

Complex DrivingFunction::operator()(double s) const {
    if (times_.empty()) return limit_;
    if (s <= times_.front()) return std::polar(1.0, angles_.front());
    if (s >= times_.back()) return limit_;
    const auto it = std::upper_bound(times_.begin(), times_.end(), s);
    const auto k = static_cast<std::size_t>(it - times_.begin());
    const double w = (s - times_[k - 1]) / (times_[k] - times_[k - 1]);
    return std::polar(1.0, (1.0 - w) * angles_[k - 1] + w * angles_[k]);
}

LoewnerChain::LoewnerChain(DrivingFunction driving, ChainControl control)
    : driving_(std::move(driving)), control_(control) {}

LoewnerChain LoewnerChain::koebe(ChainControl control) {
    return LoewnerChain(DrivingFunction::constant({-1.0, 0.0}), control);
}

Complex LoewnerChain::rhs(double s, Complex f) const {
    const Complex q = driving_(s) * f;
    const Complex gap = 1.0 - q;
    if (std::abs(gap) < control_.singular_margin)
        throw Error(ErrorCode::SingularityApproach, "|1 - kappa f| below margin at s = " + std::to_string(s));
    return -f * (1.0 + q) / gap;
}

Complex LoewnerChain::scaled_rhs(double s, Complex h) const {
    const Complex q = driving_(s) * std::exp(-s) * h;
    const Complex gap = 1.0 - q;
    if (std::abs(gap) < control_.singular_margin)
        throw Error(ErrorCode::SingularityApproach, "|1 - kappa f| below margin at s = " + std::to_string(s));
    return -2.0 * h * q / gap;
}

Trajectory::Trajectory(const LoewnerChain& chain, Complex z)
    : chain_(&chain), solver_(0.0, z, chain.control().step) {
    if (!(std::abs(z) <= 0.95)) throw Error(ErrorCode::OutsideDomain, "trajectory start needs |z| <= 0.95");
}

Complex Trajectory::advance_to(double s) {
    if (s > chain_->control().horizon)
        throw Error(ErrorCode::HorizonExceeded, "s = " + std::to_string(s) + " is beyond the horizon");
    if (s < solver_.time()) throw Error(ErrorCode::InvalidArgument, "trajectories only advance forward");
    solver_.advance_to([this](double t, Complex h) { return chain_->scaled_rhs(t, h); }, s);
    return value();
}

Complex ode_solve(const LoewnerChain& chain, Complex z, double t) {
    Trajectory trajectory(chain, z);
    return trajectory.advance_to(t);
}

Complex explicit_koebe_chain(Complex z, double t) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDomain, "explicit chain needs |z| < 1");
    const Complex d = 1.0 - z;
    const Complex c = std::exp(-t) * z / (d * d);
    if (c == Complex{0.0, 0.0}) return {0.0, 0.0};
    // c w^2 - (2c + 1) w + c = 0; the roots multiply to 1.
    const Complex b = -(2.0 * c + 1.0);
    const Complex root = std::sqrt(b * b - 4.0 * c * c);
    const Complex q = -0.5 * (std::abs(b + root) >= std::abs(b - root) ? b + root : b - root);
    const Complex w1 = q / c;
    const Complex w2 = c / q;
    if (std::abs(std::abs(w1) - 1.0) < 1e-10 && std::abs(std::abs(w2) - 1.0) < 1e-10)
        throw Error(ErrorCode::RootSelectionAmbiguous, "both roots lie on the unit circle");
    return std::abs(w1) < std::abs(w2) ? w1 : w2;
}

Complex h_integrand(const LoewnerChain& chain, Complex z, double s) {
    const Complex f = ode_solve(chain, z, s);
    const Complex q = chain.driving()(s) * f;
    return -std::exp(s) * f * 2.0 * q / (1.0 - q);
}

namespace {

struct Node {
    double x;
    double w;
};

// 20-point Gauss-Legendre rule on [-1, 1], nodes in increasing order.
const std::vector<Node>& legendre_nodes() {
    static const std::vector<Node> nodes = [] {
        using rule = boost::math::quadrature::gauss<double, 20>;
        const auto& x = rule::abscissa();
        const auto& w = rule::weights();
        std::vector<Node> out;
        for (std::size_t k = x.size(); k-- > 0;) out.push_back({-x[k], w[k]});
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k] != 0.0) out.push_back({x[k], w[k]});
        return out;
    }();
    return nodes;
}

struct TailTerms {
    Complex full;
    Complex second;
    Complex direct;
    double tail;
};

TailTerms integrate_terms(const LoewnerChain& chain, Complex z, double t, double t_max, double panel_width) {
    if (!(panel_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "panel width must be positive");
    TailTerms out{};
    Trajectory trajectory(chain, z);
    trajectory.advance_to(t);
    const auto& nodes = legendre_nodes();
    for (double a = t; a < t_max; a += panel_width) {
        const double b = std::min(t_max, a + panel_width);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (const auto& node : nodes) {
            const double s = mid + half * node.x;
            const Complex f = trajectory.advance_to(s);
            const Complex kappa = chain.driving()(s);
            const Complex q = kappa * f;
            const double es = std::exp(s);
            const double w = half * node.w;
            out.full += w * (es * f * q / (1.0 - q));
            out.second += w * (es * f * q * q / (1.0 - q));
            out.direct += w * (es * kappa * f * f);
        }
    }
    const Complex f = trajectory.advance_to(t_max);
    const Complex q = chain.driving()(t_max) * f;
    out.tail = std::abs(std::exp(t_max) * f * q / (1.0 - q));
    return out;
}

}  // namespace

VariationalIntegral variational_integral(const LoewnerChain& chain, Complex z, double t, double t_max,
                                         const QuadratureOptions& options) {
    if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "t must be nonnegative");
    if (t_max < t + 20.0) throw Error(ErrorCode::InvalidArgument, "truncation must satisfy t_max >= t + 20");
    const auto terms = integrate_terms(chain, z, t, t_max, options.panel_width);
    if (options.tail_tolerance && terms.tail > *options.tail_tolerance)
        throw Error(ErrorCode::TailBoundLoose, "estimated tail " + std::to_string(terms.tail) + " exceeds tolerance");
    return {terms.full, terms.tail, t, t_max};
}

SupportPointData SupportPointData::from_map(MapSpec map, Complex z0, double tolerance) {
    if (std::abs(std::abs(z0) - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "z0 must be unimodular");
    const Complex inner = (1.0 - 1e-7) * z0;
    const double slope = std::abs(map.derivative(inner));
    if (slope > tolerance)
        throw Error(ErrorCode::InvalidArgument, "map derivative does not vanish at z0 (|f'| = " +
                                                    std::to_string(slope) + ")");
    Complex tip = map.value_unchecked(z0);
    if (!std::isfinite(tip.real()) || !std::isfinite(tip.imag())) tip = map(inner);
    return {std::move(map), z0, tip};
}

TailDecomposition theorem2_report(const LinearFunctional& L, const LoewnerChain& chain,
                                  const SupportPointData& support, double t, const TailReportOptions& options) {
    if (std::abs(chain.driving().limit() - std::conj(support.z0)) > 1e-9)
        throw Error(ErrorCode::InvalidArgument, "chain limit must equal conj(z0)");
    TailDecomposition out;
    out.t = t;
    out.t_max = t + options.t_max_offset;
    if (out.t_max < t + 20.0) throw Error(ErrorCode::InvalidArgument, "truncation must satisfy t_max >= t + 20");

    const auto& ex = options.extraction;
    CircleSamples full, second, direct, leading;
    for (auto* s : {&full, &second, &direct, &leading}) {
        s->radius = ex.radius;
        s->values.resize(ex.samples);
    }
    // Validates the grid through sample_circle and fills the leading term.
    const Complex conj_z0 = std::conj(support.z0);
    const double decay = std::exp(-t);
    leading = sample_circle(
        [&](Complex z) {
            const Complex f = support.map(z);
            return conj_z0 * f * f * decay;
        },
        ex);

    std::vector<double> tails(ex.samples);
    parallel_for(ex.samples, ex.threads, [&](std::size_t k) {
        const auto terms = integrate_terms(chain, leading.node(k), t, out.t_max, options.panel_width);
        full.values[k] = terms.full;
        second.values[k] = terms.second;
        direct.values[k] = terms.direct;
        tails[k] = terms.tail;
    });

    out.leading = apply_functional(L, leading);
    out.full = apply_functional(L, full);
    out.second_order = apply_functional(L, second);
    out.remainder = out.full - out.leading - out.second_order;
    out.remainder_direct = apply_functional(L, direct) - out.leading;
    out.closure_residual = std::abs(out.full - out.leading - out.second_order - out.remainder_direct);
    out.tail_bound = L.circle_norm(ex.radius) * *std::max_element(tails.begin(), tails.end());
    out.sum_real = (out.leading + out.second_order + out.remainder).real();
    out.inequality_holds = out.sum_real <= options.tolerance;
    return out;
}

std::vector<SignTableRow> remark1_check(const ExtractionOptions& options) {
    const auto L = LinearFunctional::coefficient_index(2);
    std::vector<SignTableRow> rows;
    const std::pair<MapSpec, Complex> cases[] = {{MapSpec::koebe(), {-1.0, 0.0}},
                                                 {MapSpec::rotated_koebe(std::numbers::pi), {1.0, 0.0}}};
    for (const auto& [map, z0] : cases) {
        const auto square = [&map](Complex z) {
            const Complex f = map(z);
            return f * f;
        };
        SignTableRow row;
        row.map = map.name();
        row.z0 = z0;
        row.l_of_square = apply_functional(L, square, options);
        row.real_rotated = (std::conj(z0) * row.l_of_square).real();
        rows.push_back(row);
    }
    return rows;
}

ChainLimit::ChainLimit(LoewnerChain chain, double horizon) : chain_(std::move(chain)), horizon_(horizon) {}

Complex ChainLimit::value(Complex z) const {
    Trajectory trajectory(chain_, z);
    trajectory.advance_to(horizon_);
    return trajectory.scaled_value();
}

Complex ChainLimit::derivative(Complex z) const {
    const double h = 1e-3;
    return (8.0 * (value(z + h) - value(z - h)) - (value(z + 2.0 * h) - value(z - 2.0 * h))) / (12.0 * h);
}

std::string ChainLimit::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "T=" << horizon_;
    return out.str();
}

}  // namespace schlicht::loewner
