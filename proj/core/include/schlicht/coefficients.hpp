#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "schlicht/maps.hpp"

namespace schlicht {

/// Values of a function at radius * exp(2 pi i k / N), k = 0..N-1.
struct CircleSamples {
    double radius = 0.5;
    std::vector<Complex> values;

    std::size_t size() const noexcept { return values.size(); }
    Complex node(std::size_t k) const;
};

struct ExtractionOptions {
    double radius = 0.5;
    std::size_t samples = 256;
    unsigned threads = 1;
};

/// Samples f on the extraction circle. N must be a power of two >= 64 and
/// the radius in (0, 1).
CircleSamples sample_circle(const Evaluator& f, const ExtractionOptions& options = {});

/// j-th Taylor coefficient by the trapezoid rule on the Cauchy integral.
Complex coefficient(const CircleSamples& samples, int j);
Complex coefficient(const Evaluator& f, int j, const ExtractionOptions& options = {});

/// f(z) for |z| < radius from the Cauchy integral formula on the samples.
Complex cauchy_value(const CircleSamples& samples, Complex z);

}  // namespace schlicht
