#pragma once

#include <vector>

#include "schlicht/maps.hpp"

namespace schlicht {

/// Function analytic on a neighborhood of the closed disk, with derivative.
struct AnalyticFunction {
    Evaluator value;
    Evaluator derivative;
};

/// c0 + c1 z + c2 z^2 + ...
AnalyticFunction polynomial_function(std::vector<Complex> coefficients);

struct PerturbationOptions {
    /// Radii and angles per side of the polar grid; gridsize^2 points total.
    int gridsize = 64;
    double boundary_tolerance = 1e-8;
    unsigned threads = 1;
};

struct PerturbationRadius {
    /// epsilon / M, or +infinity when g is constant on the grid.
    double delta;
    /// min |f(z) - f(w)| / |z - w| over grid pairs (f' on the diagonal).
    double epsilon;
    /// max |g(z) - g(w)| / |z - w| over grid pairs (g' on the diagonal).
    double max_quotient;
    double boundary_derivative_min;
    double boundary_derivative_angle;
};

/// Sampled radius delta such that f + w0 g stays injective on the grid for
/// |w0| < delta. The grid is gridsize radii (the last on the unit circle)
/// times gridsize angles; the result is a sampled bound, not a proof.
/// Throws DerivativeVanishesOnBoundary when min |f'| on the unit circle is
/// below the tolerance.
PerturbationRadius perturbation_radius(const AnalyticFunction& f, const AnalyticFunction& g,
                                       const PerturbationOptions& options = {});

/// Grid points used by perturbation_radius.
std::vector<Complex> perturbation_grid(int gridsize);

/// Minimum of |h(e^{i theta})| over `samples` equispaced angles, refined by
/// Brent's method around the best sample. Returns {value, angle}.
std::pair<double, double> boundary_modulus_min(const Evaluator& h, int samples);

}  // namespace schlicht
