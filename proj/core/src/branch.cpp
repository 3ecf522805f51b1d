#include "schlicht/branch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "schlicht/error.hpp"

namespace schlicht {

namespace {

std::string show(Complex z) {
    std::ostringstream out;
    out.precision(17);
    out << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return out.str();
}

}  // namespace

OmittedPair::OmittedPair(Complex alpha, Complex beta, double tolerance)
    : alpha_(alpha), beta_(beta) {
    const double ra = std::abs(alpha);
    const double rb = std::abs(beta);
    const double scale = std::max({1.0, ra, rb});
    if (!(ra > 0.0) || !(rb > 0.0))
        throw Error(ErrorCode::InvalidPair, "omitted values must be nonzero");
    if (std::abs(ra - rb) > tolerance * scale)
        throw Error(ErrorCode::InvalidPair,
                    "omitted values differ in modulus: |alpha|=" + std::to_string(ra) +
                        " |beta|=" + std::to_string(rb));
    if (std::abs(alpha - beta) <= tolerance * scale)
        throw Error(ErrorCode::InvalidPair, "omitted values coincide");
    radius_ = 0.5 * (ra + rb);
    theta_ = std::arg(alpha);
    phi_ = std::arg(beta);
    if (theta_ - phi_ <= 0.0) theta_ += 2.0 * std::numbers::pi;
}

Complex OmittedPair::psi_at_origin() const noexcept {
    Complex root = std::sqrt(alpha_ * beta_);
    if (root.real() < 0.0 || (root.real() == 0.0 && root.imag() < 0.0)) root = -root;
    return root;
}

double OmittedPair::branch_distance(Complex w) const noexcept {
    return std::min(std::abs(w - alpha_), std::abs(w - beta_));
}

Complex OmittedPair::bisector_direction() const noexcept {
    return std::polar(1.0, 0.5 * (theta_ + phi_));
}

BranchPath::BranchPath(std::vector<Complex> waypoints, double step_bound)
    : waypoints_(std::move(waypoints)), step_bound_(step_bound) {
    if (waypoints_.empty()) throw Error(ErrorCode::InvalidArgument, "branch path has no waypoints");
    if (!(step_bound_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "step bound must be positive");
    for (std::size_t k = 1; k < waypoints_.size(); ++k) {
        if (!(std::abs(waypoints_[k] - waypoints_[k - 1]) < step_bound_))
            throw Error(ErrorCode::InvalidArgument,
                        "waypoints " + std::to_string(k - 1) + " and " + std::to_string(k) +
                            " are not closer than the step bound");
    }
}

BranchPath BranchPath::point(Complex w) { return BranchPath({w}, 1.0); }

BranchPath make_branch_path(const OmittedPair& pair, std::span<const Complex> polyline,
                            const BranchOptions& options) {
    if (polyline.empty()) throw Error(ErrorCode::InvalidArgument, "empty polyline");
    std::vector<Complex> points{polyline.front()};
    double largest = 0.0;
    for (std::size_t k = 1; k < polyline.size(); ++k) {
        const Complex end = polyline[k];
        Complex cur = points.back();
        while (cur != end) {
            const double d = pair.branch_distance(cur);
            if (d <= options.branch_tolerance * (1.0 + std::abs(cur)))
                throw Error(ErrorCode::PathHitsBranchPoint, "polyline passes through " + show(cur));
            const double h = options.step_fraction * d;
            const Complex remaining = end - cur;
            const double left = std::abs(remaining);
            Complex next = left <= h ? end : cur + remaining * (h / left);
            largest = std::max(largest, std::abs(next - cur));
            points.push_back(next);
            cur = next;
        }
    }
    return BranchPath(std::move(points), largest > 0.0 ? largest * (1.0 + 1e-9) + 1e-300 : 1.0);
}

BranchPath segment_path(const OmittedPair& pair, Complex target, const BranchOptions& options) {
    const Complex ends[] = {Complex{0.0, 0.0}, target};
    return make_branch_path(pair, ends, options);
}

bool nearer_root(Complex radicand, Complex previous, double ratio, Complex& chosen) noexcept {
    const Complex root = std::sqrt(radicand);
    const double plus = std::abs(previous - root);
    const double minus = std::abs(previous + root);
    chosen = plus <= minus ? root : -root;
    return std::min(plus, minus) < ratio * std::abs(root);
}

Complex continue_psi(const OmittedPair& pair, Complex start, const BranchPath& path,
                     const BranchOptions& options) {
    Complex value = start;
    const auto& points = path.waypoints();
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Complex w = points[k];
        if (pair.branch_distance(w) <= options.branch_tolerance * (1.0 + std::abs(w)))
            throw Error(ErrorCode::PathHitsBranchPoint, "waypoint " + show(w) + " is a branch point");
        if (k == 0) continue;
        Complex chosen;
        // The two candidates are 2|root| apart; the nearer one is trusted only
        // when it lies within half that separation.
        if (!nearer_root(pair.radicand(w), value, 1.0, chosen))
            throw Error(ErrorCode::AmbiguousContinuation,
                        "step to waypoint " + std::to_string(k) + " at " + show(w) + " is too large");
        value = chosen;
    }
    return value;
}

Complex psi_eval(const OmittedPair& pair, Complex target, const BranchPath& path,
                 const BranchOptions& options) {
    const double tol = 1e-12 * (1.0 + std::abs(target));
    if (std::abs(path.front()) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "branch path must start at 0");
    if (std::abs(path.back() - target) > tol)
        throw Error(ErrorCode::InvalidArgument, "branch path must end at the target");
    return continue_psi(pair, pair.psi_at_origin(), path, options);
}

Complex psi_prime(const OmittedPair& pair, Complex w, Complex psi_w, double tolerance) {
    if (std::abs(psi_w) <= tolerance)
        throw Error(ErrorCode::DerivativeSingular, "psi vanishes at " + show(w));
    return (2.0 * w - pair.alpha() - pair.beta()) / (2.0 * psi_w);
}

}  // namespace schlicht
