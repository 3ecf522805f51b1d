#include "schlicht/polyext.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "schlicht/error.hpp"
#include "schlicht/parallel.hpp"

namespace schlicht::polyext {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Complex unit_root(int k, int samples) { return std::polar(1.0, two_pi * k / samples); }

double wrap_angle(double theta) {
    theta = std::fmod(theta, two_pi);
    return theta < 0.0 ? theta + two_pi : theta;
}

}  // namespace

PolynomialCandidate::PolynomialCandidate(int degree_cap, std::vector<Complex> tail)
    : degree_cap_(degree_cap), tail_(std::move(tail)) {
    if (degree_cap < 1) throw Error(ErrorCode::InvalidArgument, "degree cap must be at least 1");
    if (static_cast<int>(tail_.size()) > degree_cap - 1)
        throw Error(ErrorCode::InvalidArgument, "more coefficients than the degree cap allows");
}

Complex PolynomialCandidate::coefficient(int k) const {
    if (k == 1) return {1.0, 0.0};
    if (k < 2 || k - 2 >= static_cast<int>(tail_.size())) return {0.0, 0.0};
    return tail_[static_cast<std::size_t>(k - 2)];
}

std::vector<Complex> PolynomialCandidate::coefficients() const {
    std::vector<Complex> c(static_cast<std::size_t>(degree_cap_) + 1);
    for (int k = 0; k <= degree_cap_; ++k) c[static_cast<std::size_t>(k)] = coefficient(k);
    return c;
}

Complex PolynomialCandidate::value(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = tail_.rbegin(); it != tail_.rend(); ++it) acc = (acc + *it) * z;
    return (acc + 1.0) * z;
}

Complex PolynomialCandidate::derivative(Complex z) const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = tail_.size(); i-- > 0;) acc = acc * z + static_cast<double>(i + 2) * tail_[i];
    return acc * z + 1.0;
}

Complex PolynomialCandidate::second_derivative(Complex z) const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = tail_.size(); i-- > 0;) {
        const double k = static_cast<double>(i + 2);
        acc = acc * z + k * (k - 1.0) * tail_[i];
    }
    return acc;
}

std::string PolynomialCandidate::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "z";
    for (std::size_t i = 0; i < tail_.size(); ++i)
        out << " + (" << tail_[i].real() << (tail_[i].imag() < 0 ? "-" : "+") << std::abs(tail_[i].imag())
            << "i) z^" << i + 2;
    return out.str();
}

// Geometry

namespace {

double orient(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

bool within_box(Point a, Point b, Point c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
}

struct SweepSegment {
    Point left;
    Point right;
};

double height_at(const SweepSegment& s, double x) {
    const double dx = s.right.x - s.left.x;
    if (dx == 0.0) return s.left.y;
    return s.left.y + (x - s.left.x) / dx * (s.right.y - s.left.y);
}

double slope(const SweepSegment& s) {
    const double dx = s.right.x - s.left.x;
    if (dx == 0.0) return std::numeric_limits<double>::infinity();
    return (s.right.y - s.left.y) / dx;
}

}  // namespace

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
    const double d1 = orient(q1, q2, p1);
    const double d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1);
    const double d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && within_box(q1, q2, p1)) return true;
    if (d2 == 0 && within_box(q1, q2, p2)) return true;
    if (d3 == 0 && within_box(p1, p2, q1)) return true;
    if (d4 == 0 && within_box(p1, p2, q2)) return true;
    return false;
}

std::optional<IntersectionWitness> boundary_self_intersection(const std::vector<Point>& points) {
    const std::size_t m = points.size();
    if (m < 8) throw Error(ErrorCode::InvalidArgument, "polyline needs at least 8 points");

    // A generic rotation keeps segments off the vertical.
    const double c = std::cos(0.1234567), s = std::sin(0.1234567);
    std::vector<SweepSegment> segs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Point a = points[k], b = points[(k + 1) % m];
        Point ra{c * a.x - s * a.y, s * a.x + c * a.y};
        Point rb{c * b.x - s * b.y, s * b.x + c * b.y};
        if (rb.x < ra.x || (rb.x == ra.x && rb.y < ra.y)) std::swap(ra, rb);
        segs[k] = {ra, rb};
    }

    struct Event {
        double x;
        int type;  // 0 insert, 1 remove
        double y;
        std::size_t seg;
    };
    std::vector<Event> events;
    events.reserve(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        events.push_back({segs[k].left.x, 0, segs[k].left.y, k});
        events.push_back({segs[k].right.x, 1, segs[k].right.y, k});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.type != b.type) return a.type < b.type;
        if (a.y != b.y) return a.y < b.y;
        return a.seg < b.seg;
    });

    double sweep_x = 0.0;
    auto below = [&](std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double yi = height_at(segs[i], sweep_x), yj = height_at(segs[j], sweep_x);
        if (yi != yj) return yi < yj;
        const double si = slope(segs[i]), sj = slope(segs[j]);
        if (si != sj) return si < sj;
        return i < j;
    };
    std::set<std::size_t, decltype(below)> active(below);
    std::vector<std::set<std::size_t, decltype(below)>::iterator> handle(m, active.end());

    auto adjacent = [m](std::size_t i, std::size_t j) {
        const std::size_t d = i > j ? i - j : j - i;
        return d == 1 || d == m - 1;
    };
    auto test = [&](std::size_t i, std::size_t j) -> std::optional<IntersectionWitness> {
        if (i == j || adjacent(i, j)) return std::nullopt;
        if (!segments_intersect(points[i], points[(i + 1) % m], points[j], points[(j + 1) % m])) return std::nullopt;
        return IntersectionWitness{std::min(i, j), std::max(i, j)};
    };

    for (const auto& e : events) {
        sweep_x = e.x;
        if (e.type == 0) {
            const auto it = active.insert(e.seg).first;
            handle[e.seg] = it;
            if (it != active.begin())
                if (auto w = test(*std::prev(it), e.seg)) return w;
            if (auto next = std::next(it); next != active.end())
                if (auto w = test(*next, e.seg)) return w;
        } else {
            const auto it = handle[e.seg];
            if (it != active.begin()) {
                const auto next = std::next(it);
                if (next != active.end())
                    if (auto w = test(*std::prev(it), *next)) return w;
            }
            active.erase(it);
        }
    }
    return std::nullopt;
}

namespace {

Complex derivative_at(const PolynomialCandidate& p, double radius, double theta) {
    const Complex v = p.derivative(std::polar(radius, theta));
    if (std::abs(v) <= 1e-10)
        throw Error(ErrorCode::InconclusiveOnBoundary, "|p'| vanishes to 1e-10 at angle " + std::to_string(theta));
    return v;
}

// Argument change of p' over the arc [a, b], bisected until every step
// turns by less than pi/4, so zeros close to the circle are not skipped.
double arc_argument(const PolynomialCandidate& p, double radius, double a, double b, Complex fa, Complex fb,
                    int depth) {
    const double turn = std::arg(fb / fa);
    if (std::abs(turn) < std::numbers::pi / 4.0) return turn;
    if (depth >= 60) throw Error(ErrorCode::InconclusiveOnBoundary, "argument refinement did not resolve");
    const double mid = 0.5 * (a + b);
    const Complex fm = derivative_at(p, radius, mid);
    return arc_argument(p, radius, a, mid, fa, fm, depth + 1) + arc_argument(p, radius, mid, b, fm, fb, depth + 1);
}

}  // namespace

int derivative_winding(const PolynomialCandidate& p, int samples, double radius) {
    if (samples < 8) throw Error(ErrorCode::InvalidArgument, "winding needs at least 8 samples");
    const double step = two_pi / samples;
    double total = 0.0;
    const Complex first = derivative_at(p, radius, 0.0);
    Complex previous = first;
    for (int k = 1; k <= samples; ++k) {
        const Complex current = k == samples ? first : derivative_at(p, radius, k * step);
        total += arc_argument(p, radius, (k - 1) * step, k * step, previous, current, 0);
        previous = current;
    }
    return static_cast<int>(std::lround(total / two_pi));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Rejected: return "rejected";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::vector<Point> boundary_points(const PolynomialCandidate& p, int samples) {
    std::vector<Point> out(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const Complex w = p.value(unit_root(k, samples));
        out[static_cast<std::size_t>(k)] = {w.real(), w.imag()};
    }
    return out;
}

namespace {

double min_separation(const std::vector<Point>& pts) {
    const std::size_t m = pts.size();
    std::vector<double> x(m), y(m);
    for (std::size_t k = 0; k < m; ++k) {
        x[k] = pts[k].x;
        y[k] = pts[k].y;
    }
    // Pairs (j, j + d mod m) for d <= m / 2 cover every unordered pair.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t d = 1; d <= m / 2; ++d) {
        const double c = 2.0 * std::sin(std::numbers::pi * static_cast<double>(d) / static_cast<double>(m));
        const double inv = 1.0 / (c * c);
        double row = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t k = j + d < m ? j + d : j + d - m;
            const double dx = x[j] - x[k], dy = y[j] - y[k];
            row = std::min(row, dx * dx + dy * dy);
        }
        best = std::min(best, row * inv);
    }
    return std::sqrt(best);
}

void check_curve(const std::vector<Point>& pts) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Point a = pts[k], b = pts[(k + 1) % pts.size()];
        if (std::hypot(a.x - b.x, a.y - b.y) < 1e-14)
            throw Error(ErrorCode::DegenerateCurve, "boundary samples " + std::to_string(k) + " and " +
                                                        std::to_string((k + 1) % pts.size()) + " coincide");
    }
}

// Winding on |z| = 1, or on the shrunken circle when p' nearly vanishes there.
// Returns false when neither circle gives a resolved count.
bool resolve_winding(const PolynomialCandidate& p, int samples, const CertifyOptions& options, int& winding,
                     double& radius) {
    try {
        radius = 1.0;
        winding = derivative_winding(p, samples, 1.0);
        return true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InconclusiveOnBoundary) throw;
    }
    try {
        radius = options.shrunk_radius;
        winding = derivative_winding(p, samples, options.shrunk_radius);
        return true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InconclusiveOnBoundary) throw;
    }
    return false;
}

}  // namespace

UnivalenceCertificate is_univalent(const PolynomialCandidate& p, int samples, const CertifyOptions& options) {
    if (samples < 512 || samples % 2 != 0)
        throw Error(ErrorCode::InvalidArgument, "certification needs an even sample count of at least 512");
    UnivalenceCertificate cert;
    cert.boundary_samples = samples;
    const auto pts = boundary_points(p, samples);
    check_curve(pts);

    const bool resolved = resolve_winding(p, samples, options, cert.derivative_winding, cert.winding_radius);
    cert.witness = boundary_self_intersection(pts);
    cert.min_boundary_separation = min_separation(pts);

    if (cert.witness || (resolved && cert.derivative_winding > 0))
        cert.verdict = Verdict::Rejected;
    else if (resolved && cert.derivative_winding == 0 && cert.min_boundary_separation > options.separation_tolerance)
        cert.verdict = Verdict::Certified;
    else
        cert.verdict = Verdict::Inconclusive;
    return cert;
}

// Boundary derivative

namespace {

double derivative_modulus(const PolynomialCandidate& p, double theta) {
    return std::abs(p.derivative(std::polar(1.0, theta)));
}

BoundaryMinimum refine_minimum(const PolynomialCandidate& p, int k, int samples, double grid_value) {
    const double step = two_pi / samples;
    auto squared = [&](double theta) {
        const double v = derivative_modulus(p, theta);
        return v * v;
    };
    const auto [angle, value2] = boost::math::tools::brent_find_minima(squared, (k - 1) * step, (k + 1) * step,
                                                                        std::numeric_limits<double>::digits);
    const double value = std::sqrt(value2);
    if (value < grid_value) return {value, wrap_angle(angle)};
    return {grid_value, wrap_angle(k * step)};
}

std::vector<double> grid_moduli(const PolynomialCandidate& p, int samples) {
    std::vector<double> v(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) v[static_cast<std::size_t>(k)] = std::abs(p.derivative(unit_root(k, samples)));
    return v;
}

}  // namespace

BoundaryMinimum boundary_derivative_min(const PolynomialCandidate& p, int samples) {
    if (samples < 1024) throw Error(ErrorCode::InvalidArgument, "boundary derivative search needs at least 1024 samples");
    const auto v = grid_moduli(p, samples);
    const auto k = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
    return refine_minimum(p, k, samples, v[static_cast<std::size_t>(k)]);
}

std::vector<BoundaryMinimum> boundary_derivative_zeros(const PolynomialCandidate& p, int samples, double tolerance) {
    if (samples < 1024) throw Error(ErrorCode::InvalidArgument, "boundary derivative search needs at least 1024 samples");
    const auto v = grid_moduli(p, samples);
    const auto m = static_cast<std::size_t>(samples);
    std::vector<BoundaryMinimum> out;
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = v[(k + m - 1) % m], next = v[(k + 1) % m];
        if (!(v[k] <= prev && v[k] < next)) continue;
        const auto refined = refine_minimum(p, static_cast<int>(k), samples, v[k]);
        if (refined.value < tolerance) out.push_back(refined);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.angle < b.angle; });
    return out;
}

std::vector<std::pair<double, double>> derivative_trace(const PolynomialCandidate& p, int samples) {
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double theta = two_pi * k / samples;
        out.emplace_back(theta, derivative_modulus(p, theta));
    }
    return out;
}

double zero_simplicity_check(const PolynomialCandidate& p, double angle, double zero_tolerance) {
    const Complex z = std::polar(1.0, angle);
    const double slope = std::abs(p.derivative(z));
    if (slope >= zero_tolerance)
        throw Error(ErrorCode::NotAZero, "|p'| = " + std::to_string(slope) + " at the given angle");
    return std::abs(p.second_derivative(z));
}

// Extremal search

namespace {

PolynomialCandidate from_vector(int n, const std::vector<double>& x) {
    std::vector<Complex> tail(static_cast<std::size_t>(n - 1));
    for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = {x[2 * i], x[2 * i + 1]};
    return {n, std::move(tail)};
}

std::vector<double> to_vector(const PolynomialCandidate& p) {
    std::vector<double> x;
    for (const auto& a : p.tail()) {
        x.push_back(a.real());
        x.push_back(a.imag());
    }
    return x;
}

// Certification verdict with early exits, for use inside the search loop.
bool certified(const PolynomialCandidate& p, int samples, const CertifyOptions& options) {
    const auto pts = boundary_points(p, samples);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Point a = pts[k], b = pts[(k + 1) % pts.size()];
        if (std::hypot(a.x - b.x, a.y - b.y) < 1e-14) return false;
    }
    int winding = 0;
    double radius = 1.0;
    if (!resolve_winding(p, samples, options, winding, radius) || winding != 0) return false;
    if (boundary_self_intersection(pts)) return false;
    return min_separation(pts) > options.separation_tolerance;
}

std::vector<double> random_start(int n, double budget, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> tail(static_cast<std::size_t>(n - 1));
    double weight = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        tail[i] = std::polar(unit(rng), two_pi * unit(rng));
        weight += static_cast<double>(i + 2) * std::abs(tail[i]);
    }
    const double target = budget * (0.2 + 0.8 * unit(rng));
    if (weight > 0.0)
        for (auto& a : tail) a *= target / weight;
    return to_vector(PolynomialCandidate(n, std::move(tail)));
}

struct StartOutcome {
    bool feasible = false;
    std::vector<double> x;
    double objective = -std::numeric_limits<double>::infinity();
    long evaluations = 0;
};

}  // namespace

ExtremalResult maximize_functional(const LinearFunctional& L, int n, const SearchConfig& config) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "extremal search needs n >= 2");
    if (config.starts < 1) throw Error(ErrorCode::InvalidArgument, "at least one start is required");

    const Complex base = L.apply_polynomial(PolynomialCandidate::identity(n).coefficients());
    double variation = 0.0;
    for (int k = 2; k <= n; ++k) {
        std::vector<Complex> tail(static_cast<std::size_t>(n - 1));
        tail[static_cast<std::size_t>(k - 2)] = 1.0 / (2.0 * k);
        const Complex probe = L.apply_polynomial(PolynomialCandidate(n, tail).coefficients());
        variation = std::max(variation, std::abs(probe - base));
    }
    if (variation < config.constant_tolerance)
        throw Error(ErrorCode::ConstantFunctional, L.describe() + " does not vary over S_" + std::to_string(n));

    auto objective = [&](const PolynomialCandidate& p) { return std::abs(L.apply_polynomial(p.coefficients())); };
    auto cost = [&](const std::vector<double>& x) {
        const auto p = from_vector(n, x);
        if (!certified(p, config.search_samples, config.certify)) return std::numeric_limits<double>::infinity();
        return -objective(p);
    };

    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(config.starts));
    parallel_for(outcomes.size(), config.threads, [&](std::size_t s) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(s)};
        std::mt19937_64 rng(seq);
        auto& out = outcomes[s];
        auto x = random_start(n, config.start_budget, rng);
        double value = cost(x);
        ++out.evaluations;
        if (!std::isfinite(value)) return;
        out.feasible = true;
        double step = config.initial_step;
        for (int round = 0; round <= config.restarts; ++round) {
            const auto res = nelder_mead(cost, x, step, config.max_evaluations);
            out.evaluations += res.evaluations;
            if (res.value < value) {
                x = res.x;
                value = res.value;
            }
            step *= 0.25;
        }
        out.x = x;
        out.objective = -value;
    });

    ExtremalResult result;
    std::vector<LocalMaximum> maxima;
    for (const auto& o : outcomes) {
        result.evaluations += o.evaluations;
        if (!o.feasible) continue;
        ++result.feasible_starts;
        maxima.push_back({from_vector(n, o.x), o.objective});
    }
    if (maxima.empty()) throw Error(ErrorCode::NoFeasibleStart, "no start passed certification");
    std::stable_sort(maxima.begin(), maxima.end(),
                     [](const LocalMaximum& a, const LocalMaximum& b) { return a.objective > b.objective; });

    const double best = maxima.front().objective;
    for (const auto& m : maxima) {
        if (m.objective < config.near_optimal_fraction * best) break;
        const bool duplicate = std::any_of(result.near_optimal.begin(), result.near_optimal.end(), [&](const auto& r) {
            double d = 0.0;
            for (std::size_t i = 0; i < m.polynomial.tail().size(); ++i)
                d = std::max(d, std::abs(m.polynomial.tail()[i] - r.polynomial.tail()[i]));
            return d < 1e-3;
        });
        if (!duplicate) result.near_optimal.push_back(m);
    }

    // The best candidate that also certifies at the final resolution.
    const LocalMaximum* chosen = &maxima.front();
    UnivalenceCertificate cert = is_univalent(chosen->polynomial, config.final_samples, config.certify);
    for (const auto& m : maxima) {
        if (cert.verdict == Verdict::Certified) break;
        auto c = is_univalent(m.polynomial, config.final_samples, config.certify);
        if (c.verdict == Verdict::Certified) {
            chosen = &m;
            cert = c;
        }
    }

    result.polynomial = chosen->polynomial;
    result.certificate = cert;
    result.functional_value = L.apply_polynomial(result.polynomial.coefficients());
    result.objective = std::abs(result.functional_value);
    result.phase = std::arg(result.functional_value);

    const int trace_samples = std::max(config.final_samples, 1024);
    const auto minimum = boundary_derivative_min(result.polynomial, trace_samples);
    result.boundary_derivative_min = minimum.value;
    result.boundary_derivative_angle = minimum.angle;
    result.simple_zeros = true;
    for (const auto& z : boundary_derivative_zeros(result.polynomial, trace_samples, config.zero_tolerance)) {
        result.zero_angles.push_back(z.angle);
        const Complex second = result.polynomial.second_derivative(std::polar(1.0, z.angle));
        result.second_derivative_at_zeros.push_back(second);
        if (std::abs(second) <= config.simplicity_tolerance) result.simple_zeros = false;
    }
    return result;
}

}  // namespace schlicht::polyext
