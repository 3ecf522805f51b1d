#pragma once

#include <complex>
#include <span>
#include <vector>

namespace schlicht {

using Complex = std::complex<double>;

/// Two omitted values of equal modulus. Construction rejects pairs that
/// violate |alpha| = |beta| or coincide.
///
/// theta and phi are the arguments of alpha and beta, shifted so that
/// 0 < theta - phi < 2*pi.
class OmittedPair {
public:
    OmittedPair(Complex alpha, Complex beta, double tolerance = 1e-12);

    Complex alpha() const noexcept { return alpha_; }
    Complex beta() const noexcept { return beta_; }
    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }
    double radius() const noexcept { return radius_; }

    /// Base value of the branch at w = 0: the principal square root of
    /// alpha*beta, normalized to argument in (-pi/2, pi/2] regardless of the
    /// sign of a zero imaginary part.
    Complex psi_at_origin() const noexcept;

    /// (w - alpha)(w - beta), the radicand of the branch.
    Complex radicand(Complex w) const noexcept { return (w - alpha_) * (w - beta_); }

    /// Distance from w to the nearer of the two branch points.
    double branch_distance(Complex w) const noexcept;

    /// Unit vector along the perpendicular bisector of alpha and beta, which
    /// passes through the origin.
    Complex bisector_direction() const noexcept;

private:
    Complex alpha_;
    Complex beta_;
    double theta_;
    double phi_;
    double radius_;
};

/// Polyline along which the branch of the square root is continued.
/// Consecutive waypoints are strictly closer than step_bound.
class BranchPath {
public:
    BranchPath(std::vector<Complex> waypoints, double step_bound);

    /// Degenerate path consisting of a single waypoint.
    static BranchPath point(Complex w);

    const std::vector<Complex>& waypoints() const noexcept { return waypoints_; }
    double step_bound() const noexcept { return step_bound_; }
    Complex front() const { return waypoints_.front(); }
    Complex back() const { return waypoints_.back(); }

private:
    std::vector<Complex> waypoints_;
    double step_bound_;
};

struct BranchOptions {
    /// Waypoints closer than this (relative to 1 + |w|) to alpha or beta are
    /// treated as hitting a branch point.
    double branch_tolerance = 1e-12;
    /// Resampling step as a fraction of the distance to {alpha, beta}.
    double step_fraction = 1e-2;
};

/// Resamples a polyline so every step is at most step_fraction times the
/// distance of its start to the nearer branch point.
BranchPath make_branch_path(const OmittedPair& pair, std::span<const Complex> polyline,
                            const BranchOptions& options = {});

/// Straight segment 0 -> target, resampled as above.
BranchPath segment_path(const OmittedPair& pair, Complex target, const BranchOptions& options = {});

/// Continues a value of sqrt((w - alpha)(w - beta)) from (path.front(), start)
/// along the path, picking at each waypoint the root nearer the previous
/// value. Throws PathHitsBranchPoint or AmbiguousContinuation.
Complex continue_psi(const OmittedPair& pair, Complex start, const BranchPath& path,
                     const BranchOptions& options = {});

/// Value at path.back() of the branch fixed by psi(0) = sqrt(alpha*beta)
/// (principal root). The path must start at 0.
Complex psi_eval(const OmittedPair& pair, Complex target, const BranchPath& path,
                 const BranchOptions& options = {});

/// (2w - alpha - beta) / (2 psi(w)). Throws DerivativeSingular when psi_w = 0.
Complex psi_prime(const OmittedPair& pair, Complex w, Complex psi_w, double tolerance = 1e-14);

/// Picks the root of `radicand` nearer `previous`. Returns false when the
/// nearer root is not closer than `ratio` times |root| to previous, i.e. the
/// step is too large for the nearer-root rule to be trusted.
bool nearer_root(Complex radicand, Complex previous, double ratio, Complex& chosen) noexcept;

}  // namespace schlicht
