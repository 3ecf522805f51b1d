#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "schlicht/coefficients.hpp"

namespace schlicht {

/// Continuous linear functional on holomorphic functions of the disk.
///
/// Coefficient kinds are sums  sum_k w_k a_{j_k}(f);  point evaluation is
/// w * f(z*). Multiplying by a scalar keeps the kind.
class LinearFunctional {
public:
    enum class Kind { CoefficientIndex, FiniteCombination, PointEvaluation };
    using Term = std::pair<int, Complex>;

    static LinearFunctional coefficient_index(int j);
    static LinearFunctional combination(std::vector<Term> terms);
    static LinearFunctional point_evaluation(Complex z);

    LinearFunctional scaled(Complex factor) const;

    Kind kind() const noexcept { return kind_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    Complex point() const noexcept { return point_; }
    Complex weight() const noexcept { return weight_; }

    /// Bound on |L(g)| by sup|g| over the circle of the given radius.
    double circle_norm(double radius) const;

    /// L applied to a polynomial given by coefficients c0, c1, ..., exactly.
    Complex apply_polynomial(const std::vector<Complex>& coefficients) const;

    std::string describe() const;

private:
    LinearFunctional(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::vector<Term> terms_;
    Complex point_{0.0, 0.0};
    Complex weight_{1.0, 0.0};
};

/// L(f): coefficient kinds via trapezoid extraction, point evaluation
/// directly.
Complex apply_functional(const LinearFunctional& L, const Evaluator& f,
                         const ExtractionOptions& options = {});

/// L(f) from circle samples alone; point evaluation goes through the Cauchy
/// formula and needs |z*| < radius.
Complex apply_functional(const LinearFunctional& L, const CircleSamples& samples);

}  // namespace schlicht
