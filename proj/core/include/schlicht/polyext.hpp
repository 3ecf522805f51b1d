#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schlicht/functional.hpp"

namespace schlicht::polyext {

/// z + a2 z^2 + ... + an z^n.
class PolynomialCandidate {
public:
    PolynomialCandidate() = default;
    /// `tail` holds a2, a3, ...; its length may not exceed degree_cap - 1.
    PolynomialCandidate(int degree_cap, std::vector<Complex> tail);

    static PolynomialCandidate identity(int degree_cap = 1) { return {degree_cap, {}}; }

    int degree_cap() const noexcept { return degree_cap_; }
    const std::vector<Complex>& tail() const noexcept { return tail_; }
    /// a_k for k >= 0 (a0 = 0, a1 = 1).
    Complex coefficient(int k) const;
    /// c0, c1, ..., c_cap.
    std::vector<Complex> coefficients() const;

    Complex value(Complex z) const;
    Complex derivative(Complex z) const;
    Complex second_derivative(Complex z) const;

    std::string describe() const;

private:
    int degree_cap_ = 1;
    std::vector<Complex> tail_;
};

struct Point {
    double x;
    double y;
};

struct IntersectionWitness {
    /// Segment k joins points k and k+1 (mod size).
    std::size_t first;
    std::size_t second;
};

/// True when closed segments [p1, p2] and [q1, q2] share a point.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2);

/// First intersecting pair of non-adjacent segments of the closed polyline,
/// found by a Shamos-Hoey sweep. Touching counts as intersecting.
std::optional<IntersectionWitness> boundary_self_intersection(const std::vector<Point>& points);

/// Rounded argument change of p' around |z| = radius over 2 pi. Throws
/// InconclusiveOnBoundary when |p'| <= 1e-10 at a sample.
int derivative_winding(const PolynomialCandidate& p, int samples, double radius = 1.0);

enum class Verdict { Certified, Rejected, Inconclusive };
std::string to_string(Verdict v);

struct CertifyOptions {
    double separation_tolerance = 1e-9;
    /// Radius of the fallback winding circle when p' nearly vanishes on |z| = 1.
    double shrunk_radius = 1.0 - 1e-6;
};

struct UnivalenceCertificate {
    int boundary_samples = 0;
    double min_boundary_separation = 0.0;
    int derivative_winding = 0;
    /// 1 unless the winding was read on the shrunken circle.
    double winding_radius = 1.0;
    std::optional<IntersectionWitness> witness;
    Verdict verdict = Verdict::Inconclusive;
};

/// Boundary injectivity at resolution M plus the zero count of p' in the disk.
UnivalenceCertificate is_univalent(const PolynomialCandidate& p, int samples, const CertifyOptions& options = {});

/// p(e^{2 pi i k / samples}) as plane points.
std::vector<Point> boundary_points(const PolynomialCandidate& p, int samples);

struct BoundaryMinimum {
    double value;
    double angle;  // in [0, 2 pi)
};

/// min |p'(e^{i theta})|, grid search refined by Brent's method.
BoundaryMinimum boundary_derivative_min(const PolynomialCandidate& p, int samples);

/// Refined angles of grid-local minima of |p'| on the circle whose value is
/// below `tolerance`, ascending.
std::vector<BoundaryMinimum> boundary_derivative_zeros(const PolynomialCandidate& p, int samples, double tolerance);

/// (theta_k, |p'(e^{i theta_k})|) on an equispaced grid.
std::vector<std::pair<double, double>> derivative_trace(const PolynomialCandidate& p, int samples);

/// |p''(e^{i theta})|; throws NotAZero when |p'(e^{i theta})| >= zero_tolerance.
double zero_simplicity_check(const PolynomialCandidate& p, double angle, double zero_tolerance = 1e-4);

struct SearchConfig {
    int starts = 32;
    std::uint64_t seed = 20240917;
    int search_samples = 512;
    int final_samples = 4096;
    int max_evaluations = 3000;
    int restarts = 6;
    double initial_step = 0.05;
    /// Starts are drawn with sum k |a_k| <= start_budget, which guarantees univalence.
    double start_budget = 0.9;
    double zero_tolerance = 1e-4;
    double simplicity_tolerance = 1e-3;
    /// Local maxima above this fraction of the best are reported.
    double near_optimal_fraction = 0.999;
    /// Minimum |L(z^k)| for L to count as non-constant on S_n.
    double constant_tolerance = 1e-12;
    unsigned threads = 1;
    CertifyOptions certify;
};

struct LocalMaximum {
    PolynomialCandidate polynomial;
    double objective;
};

struct ExtremalResult {
    PolynomialCandidate polynomial;
    Complex functional_value;
    /// |L(p)|; equals Re L(e^{-i phase} p) at the returned phase.
    double objective = 0.0;
    double phase = 0.0;
    double boundary_derivative_min = 0.0;
    double boundary_derivative_angle = 0.0;
    std::vector<double> zero_angles;
    std::vector<Complex> second_derivative_at_zeros;
    bool simple_zeros = false;
    UnivalenceCertificate certificate;
    std::vector<LocalMaximum> near_optimal;
    int feasible_starts = 0;
    long evaluations = 0;
};

/// Maximizes |L(p)| over certified members of S_n by multi-start Nelder-Mead
/// with rejection of uncertified candidates.
ExtremalResult maximize_functional(const LinearFunctional& L, int n, const SearchConfig& config = {});

/// Minimizes f over R^d from x0. Non-finite values are treated as +infinity.
struct SimplexResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

template <class F>
SimplexResult nelder_mead(F&& f, std::vector<double> x0, double step, int max_evaluations, double ftol = 1e-14,
                          double xtol = 1e-12);

}  // namespace schlicht::polyext

#include "schlicht/detail/nelder_mead.hpp"
