#include "parse.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "schlicht/error.hpp"

namespace schlicht::cli {

namespace {

std::string trimmed(std::string_view text) {
    std::string out;
    for (char c : text)
        if (c != ' ' && c != '\t') out.push_back(c);
    return out;
}

double parse_real(std::string_view text, std::string_view whole) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
        throw UsageError("malformed number in '" + std::string(whole) + "'");
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    out.push_back(current);
    return out;
}

}  // namespace

Complex parse_complex(std::string_view input) {
    const std::string text = trimmed(input);
    if (text.empty()) throw UsageError("empty complex literal");
    if (text.back() != 'i') return {parse_real(text, input), 0.0};

    const std::string_view body(text.data(), text.size() - 1);
    // Split before the last sign that is not an exponent sign or the leading one.
    std::size_t split_at = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    const std::string_view re = split_at == std::string_view::npos ? std::string_view{} : body.substr(0, split_at);
    std::string_view im = split_at == std::string_view::npos ? body : body.substr(split_at);
    double imag = 0.0;
    if (im.empty() || im == "+")
        imag = 1.0;
    else if (im == "-")
        imag = -1.0;
    else
        imag = parse_real(im, input);
    return {re.empty() ? 0.0 : parse_real(re, input), imag};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
    std::vector<Complex> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_complex(item));
    return out;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_real(trimmed(item), text));
    return out;
}

MapSpec parse_map(std::string_view input) {
    const std::string text = trimmed(input);
    if (text == "identity") return MapSpec::identity();
    if (text == "koebe") return MapSpec::koebe();
    if (text == "halfplane") return MapSpec::half_plane();
    if (text.rfind("rotated-koebe:", 0) == 0) return MapSpec::rotated_koebe(parse_real(text.substr(14), input));
    if (text.rfind("poly:", 0) == 0) return MapSpec::polynomial(parse_complex_list(text.substr(5)));
    throw UsageError("unknown map '" + std::string(input) +
                     "' (expected identity, koebe, rotated-koebe:<angle>, halfplane or poly:<a2>,...)");
}

LinearFunctional parse_functional(std::string_view input) {
    const std::string text = trimmed(input);
    try {
        if (text.size() > 1 && text.front() == 'a') {
            const double j = parse_real(text.substr(1), input);
            if (j != std::floor(j)) throw UsageError("coefficient index must be an integer");
            return LinearFunctional::coefficient_index(static_cast<int>(j));
        }
        if (text.rfind("point:", 0) == 0) return LinearFunctional::point_evaluation(parse_complex(text.substr(6)));
        if (text.rfind("combo:", 0) == 0) {
            std::vector<LinearFunctional::Term> terms;
            for (const auto& item : split(text.substr(6), ',')) {
                const auto at = item.find('@');
                if (at == std::string::npos) throw UsageError("combo terms are <j>@<weight>");
                const double j = parse_real(item.substr(0, at), input);
                if (j != std::floor(j)) throw UsageError("coefficient index must be an integer");
                terms.emplace_back(static_cast<int>(j), parse_complex(item.substr(at + 1)));
            }
            return LinearFunctional::combination(std::move(terms));
        }
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown functional '" + std::string(input) + "' (expected a<j>, point:<z> or combo:<j>@<w>,...)");
}

std::string format_complex(Complex z) {
    std::ostringstream out;
    out.precision(17);
    out << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << 'i';
    return out.str();
}

}  // namespace schlicht::cli
