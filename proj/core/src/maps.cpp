#include "schlicht/maps.hpp"

#include <cmath>
#include <sstream>

#include "schlicht/error.hpp"

namespace schlicht {

namespace {

Complex koebe(Complex z) {
    const Complex d = 1.0 - z;
    return z / (d * d);
}

Complex koebe_derivative(Complex z) {
    const Complex d = 1.0 - z;
    return (1.0 + z) / (d * d * d);
}

}  // namespace

MapSpec MapSpec::identity() { return MapSpec(MapKind::Identity); }

MapSpec MapSpec::koebe() { return MapSpec(MapKind::Koebe); }

MapSpec MapSpec::rotated_koebe(double angle) {
    MapSpec spec(MapKind::RotatedKoebe);
    spec.angle_ = angle;
    return spec;
}

MapSpec MapSpec::half_plane() { return MapSpec(MapKind::HalfPlane); }

MapSpec MapSpec::polynomial(std::vector<Complex> coefficients) {
    MapSpec spec(MapKind::Polynomial);
    spec.coefficients_ = std::move(coefficients);
    return spec;
}

MapSpec MapSpec::chain_limit(std::shared_ptr<const ChainLimitSource> source) {
    if (!source) throw Error(ErrorCode::InvalidArgument, "chain limit needs a source");
    MapSpec spec(MapKind::ChainLimit);
    spec.source_ = std::move(source);
    return spec;
}

Complex MapSpec::value_unchecked(Complex z) const {
    switch (kind_) {
    case MapKind::Identity: return z;
    case MapKind::Koebe: return schlicht::koebe(z);
    case MapKind::RotatedKoebe: {
        const Complex u = std::polar(1.0, angle_);
        return std::conj(u) * schlicht::koebe(u * z);
    }
    case MapKind::HalfPlane: return z / (1.0 - z);
    case MapKind::Polynomial: {
        Complex acc{0.0, 0.0};
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = (acc + *it) * z;
        return (acc + 1.0) * z;
    }
    case MapKind::ChainLimit: return source_->value(z);
    }
    return {};
}

Complex MapSpec::derivative_unchecked(Complex z) const {
    switch (kind_) {
    case MapKind::Identity: return 1.0;
    case MapKind::Koebe: return koebe_derivative(z);
    case MapKind::RotatedKoebe: return koebe_derivative(std::polar(1.0, angle_) * z);
    case MapKind::HalfPlane: {
        const Complex d = 1.0 - z;
        return 1.0 / (d * d);
    }
    case MapKind::Polynomial: {
        Complex acc{0.0, 0.0};
        const auto n = coefficients_.size();
        for (std::size_t k = n; k-- > 0;) acc = acc * z + static_cast<double>(k + 2) * coefficients_[k];
        return 1.0 + acc * z;
    }
    case MapKind::ChainLimit: return source_->derivative(z);
    }
    return {};
}

Complex MapSpec::operator()(Complex z) const {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDomain, "|z| >= 1 for map " + name());
    return value_unchecked(z);
}

Complex MapSpec::derivative(Complex z) const {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDomain, "|z| >= 1 for map " + name());
    return derivative_unchecked(z);
}

Evaluator MapSpec::evaluator() const {
    return [spec = *this](Complex z) { return spec(z); };
}

std::string MapSpec::name() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
    case MapKind::Identity: return "identity";
    case MapKind::Koebe: return "koebe";
    case MapKind::RotatedKoebe: out << "rotated-koebe:" << angle_; return out.str();
    case MapKind::HalfPlane: return "halfplane";
    case MapKind::Polynomial:
        out << "poly:";
        for (std::size_t k = 0; k < coefficients_.size(); ++k) {
            if (k) out << ',';
            out << coefficients_[k].real() << (coefficients_[k].imag() < 0 ? "" : "+")
                << coefficients_[k].imag() << 'i';
        }
        return out.str();
    case MapKind::ChainLimit: return "chain-limit:" + source_->describe();
    }
    return "unknown";
}

Complex eval_map(const MapSpec& spec, Complex z) { return spec(z); }

std::vector<Complex> radial_image(const MapSpec& map, Complex z, std::size_t samples) {
    if (samples < 2) throw Error(ErrorCode::InvalidArgument, "radial image needs two samples");
    std::vector<Complex> points(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double tau = static_cast<double>(k) / static_cast<double>(samples - 1);
        points[k] = k == 0 ? Complex{0.0, 0.0} : map(tau * z);
    }
    return points;
}

BranchPath radial_image_path(const OmittedPair& pair, const MapSpec& map, Complex z,
                             std::size_t samples, const BranchOptions& options) {
    const auto points = radial_image(map, z, samples);
    return make_branch_path(pair, points, options);
}

}  // namespace schlicht
