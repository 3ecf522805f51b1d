#include "schlicht/functional.hpp"

#include <cmath>
#include <sstream>

#include "schlicht/error.hpp"

namespace schlicht {

LinearFunctional LinearFunctional::coefficient_index(int j) {
    if (j < 0) throw Error(ErrorCode::InvalidArgument, "coefficient index must be nonnegative");
    LinearFunctional L(Kind::CoefficientIndex);
    L.terms_ = {{j, Complex{1.0, 0.0}}};
    return L;
}

LinearFunctional LinearFunctional::combination(std::vector<Term> terms) {
    if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "combination needs at least one term");
    for (const auto& [j, w] : terms)
        if (j < 0) throw Error(ErrorCode::InvalidArgument, "coefficient index must be nonnegative");
    LinearFunctional L(Kind::FiniteCombination);
    L.terms_ = std::move(terms);
    return L;
}

LinearFunctional LinearFunctional::point_evaluation(Complex z) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDomain, "evaluation point must lie in the disk");
    LinearFunctional L(Kind::PointEvaluation);
    L.point_ = z;
    return L;
}

LinearFunctional LinearFunctional::scaled(Complex factor) const {
    LinearFunctional L = *this;
    for (auto& term : L.terms_) term.second *= factor;
    L.weight_ *= factor;
    return L;
}

double LinearFunctional::circle_norm(double radius) const {
    if (kind_ == Kind::PointEvaluation) return std::abs(weight_) * radius / (radius - std::abs(point_));
    double norm = 0.0;
    for (const auto& [j, w] : terms_) norm += std::abs(w) / std::pow(radius, j);
    return norm;
}

Complex LinearFunctional::apply_polynomial(const std::vector<Complex>& coefficients) const {
    if (kind_ == Kind::PointEvaluation) {
        Complex acc{0.0, 0.0};
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * point_ + *it;
        return weight_ * acc;
    }
    Complex sum{0.0, 0.0};
    for (const auto& [j, w] : terms_)
        if (static_cast<std::size_t>(j) < coefficients.size()) sum += w * coefficients[static_cast<std::size_t>(j)];
    return sum;
}

std::string LinearFunctional::describe() const {
    std::ostringstream out;
    out.precision(17);
    auto put = [&](Complex w) { out << w.real() << (w.imag() < 0 ? "" : "+") << w.imag() << 'i'; };
    switch (kind_) {
    case Kind::CoefficientIndex:
        if (terms_.front().second == Complex{1.0, 0.0}) {
            out << 'a' << terms_.front().first;
            return out.str();
        }
        [[fallthrough]];
    case Kind::FiniteCombination:
        out << "combo:";
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            if (k) out << ',';
            out << terms_[k].first << '@';
            put(terms_[k].second);
        }
        return out.str();
    case Kind::PointEvaluation:
        out << "point:";
        put(point_);
        if (weight_ != Complex{1.0, 0.0}) {
            out << '@';
            put(weight_);
        }
        return out.str();
    }
    return {};
}

Complex apply_functional(const LinearFunctional& L, const Evaluator& f, const ExtractionOptions& options) {
    if (L.kind() == LinearFunctional::Kind::PointEvaluation) return L.weight() * f(L.point());
    return apply_functional(L, sample_circle(f, options));
}

Complex apply_functional(const LinearFunctional& L, const CircleSamples& samples) {
    if (L.kind() == LinearFunctional::Kind::PointEvaluation) return L.weight() * cauchy_value(samples, L.point());
    Complex sum{0.0, 0.0};
    for (const auto& [j, w] : L.terms()) sum += w * coefficient(samples, j);
    return sum;
}

}  // namespace schlicht
