#include "schlicht/coefficients.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "schlicht/error.hpp"
#include "schlicht/parallel.hpp"

namespace schlicht {

namespace {

Complex unit_root(std::size_t k, std::size_t n) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

void check_grid(double radius, std::size_t n) {
    if (!(radius > 0.0 && radius < 1.0))
        throw Error(ErrorCode::InvalidArgument, "extraction radius must lie in (0, 1)");
    if (n < 64 || !std::has_single_bit(n))
        throw Error(ErrorCode::InvalidArgument, "sample count must be a power of two >= 64");
}

}  // namespace

Complex CircleSamples::node(std::size_t k) const { return radius * unit_root(k, values.size()); }

CircleSamples sample_circle(const Evaluator& f, const ExtractionOptions& options) {
    check_grid(options.radius, options.samples);
    CircleSamples out;
    out.radius = options.radius;
    out.values.resize(options.samples);
    parallel_for(options.samples, options.threads,
                 [&](std::size_t k) { out.values[k] = f(out.radius * unit_root(k, options.samples)); });
    return out;
}

Complex coefficient(const CircleSamples& samples, int j) {
    if (j < 0) throw Error(ErrorCode::InvalidArgument, "coefficient index must be nonnegative");
    const std::size_t n = samples.size();
    check_grid(samples.radius, n);
    Complex sum{0.0, 0.0};
    const auto jj = static_cast<std::size_t>(j);
    for (std::size_t k = 0; k < n; ++k) sum += samples.values[k] * std::conj(unit_root((jj * k) % n, n));
    return sum / (static_cast<double>(n) * std::pow(samples.radius, j));
}

Complex coefficient(const Evaluator& f, int j, const ExtractionOptions& options) {
    return coefficient(sample_circle(f, options), j);
}

Complex cauchy_value(const CircleSamples& samples, Complex z) {
    const std::size_t n = samples.size();
    check_grid(samples.radius, n);
    if (!(std::abs(z) < samples.radius))
        throw Error(ErrorCode::OutsideDomain, "Cauchy evaluation point outside the sample circle");
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Complex node = samples.radius * unit_root(k, n);
        sum += samples.values[k] * node / (node - z);
    }
    return sum / static_cast<double>(n);
}

}  // namespace schlicht
