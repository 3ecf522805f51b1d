#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schlicht/functional.hpp"
#include "schlicht/maps.hpp"

namespace schlicht::cli {

/// Thrown for malformed command-line input.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a+bi literals: "2", "-2", "2i", "-i", "1-2.5i", "1e-3+2e-2i".
Complex parse_complex(std::string_view text);

std::vector<Complex> parse_complex_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

/// identity | koebe | rotated-koebe:<angle> | halfplane | poly:<a2>,<a3>,...
MapSpec parse_map(std::string_view text);

/// a<j> | point:<z> | combo:<j>@<w>,<j>@<w>,...
LinearFunctional parse_functional(std::string_view text);

std::string format_complex(Complex z);

}  // namespace schlicht::cli
