#include "schlicht/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "schlicht/error.hpp"
#include "schlicht/parallel.hpp"

namespace schlicht {

AnalyticFunction polynomial_function(std::vector<Complex> coefficients) {
    AnalyticFunction fn;
    fn.value = [c = coefficients](Complex z) {
        Complex acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    fn.derivative = [c = std::move(coefficients)](Complex z) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
        return acc;
    };
    return fn;
}

std::vector<Complex> perturbation_grid(int gridsize) {
    if (gridsize < 2) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 2");
    std::vector<Complex> points;
    points.reserve(static_cast<std::size_t>(gridsize) * gridsize);
    for (int i = 0; i < gridsize; ++i) {
        const double r = static_cast<double>(i + 1) / gridsize;
        for (int k = 0; k < gridsize; ++k)
            points.push_back(std::polar(r, 2.0 * std::numbers::pi * k / gridsize));
    }
    return points;
}

std::pair<double, double> boundary_modulus_min(const Evaluator& h, int samples) {
    const double step = 2.0 * std::numbers::pi / samples;
    auto modulus = [&](double theta) { return std::abs(h(std::polar(1.0, theta))); };
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k < samples; ++k) {
        const double v = modulus(k * step);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    const auto [angle, value] = boost::math::tools::brent_find_minima(
        modulus, (best_k - 1) * step, (best_k + 1) * step, std::numeric_limits<double>::digits);
    if (value < best) return {value, std::remainder(angle, 2.0 * std::numbers::pi)};
    return {best, std::remainder(best_k * step, 2.0 * std::numbers::pi)};
}

PerturbationRadius perturbation_radius(const AnalyticFunction& f, const AnalyticFunction& g,
                                       const PerturbationOptions& options) {
    PerturbationRadius out{};
    std::tie(out.boundary_derivative_min, out.boundary_derivative_angle) =
        boundary_modulus_min(f.derivative, 4 * options.gridsize);
    if (out.boundary_derivative_min < options.boundary_tolerance)
        throw Error(ErrorCode::DerivativeVanishesOnBoundary,
                    "|f'| = " + std::to_string(out.boundary_derivative_min) + " at angle " +
                        std::to_string(out.boundary_derivative_angle));

    const auto grid = perturbation_grid(options.gridsize);
    const std::size_t n = grid.size();
    std::vector<Complex> fv(n), gv(n), fd(n), gd(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = f.value(grid[i]);
        gv[i] = g.value(grid[i]);
        fd[i] = f.derivative(grid[i]);
        gd[i] = g.derivative(grid[i]);
    }

    std::vector<double> row_min(n), row_max(n);
    parallel_for(n, options.threads, [&](std::size_t i) {
        double lo = std::abs(fd[i]);
        double hi = std::abs(gd[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dz = std::abs(grid[i] - grid[j]);
            lo = std::min(lo, std::abs(fv[i] - fv[j]) / dz);
            hi = std::max(hi, std::abs(gv[i] - gv[j]) / dz);
        }
        row_min[i] = lo;
        row_max[i] = hi;
    });
    out.epsilon = *std::min_element(row_min.begin(), row_min.end());
    out.max_quotient = *std::max_element(row_max.begin(), row_max.end());
    out.delta = out.max_quotient > 0.0 ? out.epsilon / out.max_quotient
                                       : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace schlicht
