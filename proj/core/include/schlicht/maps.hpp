#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "schlicht/branch.hpp"

namespace schlicht {

using Evaluator = std::function<Complex(Complex)>;

/// Source of a map known only numerically, e.g. the limit of a Loewner chain.
class ChainLimitSource {
public:
    virtual ~ChainLimitSource() = default;
    virtual Complex value(Complex z) const = 0;
    virtual Complex derivative(Complex z) const = 0;
    virtual std::string describe() const = 0;
};

enum class MapKind { Identity, Koebe, RotatedKoebe, HalfPlane, Polynomial, ChainLimit };

/// A normalized conformal map f of the unit disk, f(0) = 0 and f'(0) = 1.
class MapSpec {
public:
    static MapSpec identity();
    /// z / (1 - z)^2
    static MapSpec koebe();
    /// e^{-i angle} K(e^{i angle} z); angle = pi gives z / (1 + z)^2.
    static MapSpec rotated_koebe(double angle);
    /// z / (1 - z), onto Re w > -1/2.
    static MapSpec half_plane();
    /// z + a2 z^2 + ... + an z^n with coefficients a2..an.
    static MapSpec polynomial(std::vector<Complex> coefficients);
    static MapSpec chain_limit(std::shared_ptr<const ChainLimitSource> source);

    MapKind kind() const noexcept { return kind_; }
    double angle() const noexcept { return angle_; }
    const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

    /// Value without the |z| < 1 check; boundary limits of the catalog maps
    /// are finite away from their poles.
    Complex value_unchecked(Complex z) const;
    Complex derivative_unchecked(Complex z) const;

    /// f(z); throws OutsideDomain for |z| >= 1.
    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;

    Evaluator evaluator() const;
    std::string name() const;

private:
    MapSpec(MapKind kind) : kind_(kind) {}

    MapKind kind_;
    double angle_ = 0.0;
    std::vector<Complex> coefficients_;
    std::shared_ptr<const ChainLimitSource> source_;
};

Complex eval_map(const MapSpec& spec, Complex z);

/// Image under f of the radial segment [0, z], sampled at `samples` points.
std::vector<Complex> radial_image(const MapSpec& map, Complex z, std::size_t samples = 256);

/// Branch path for a target f(z) in D = f(U): the radial image, resampled to
/// respect the step bound.
BranchPath radial_image_path(const OmittedPair& pair, const MapSpec& map, Complex z,
                             std::size_t samples = 256, const BranchOptions& options = {});

}  // namespace schlicht
