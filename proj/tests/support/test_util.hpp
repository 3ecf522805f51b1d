#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include <doctest.h>

#include "schlicht/error.hpp"

namespace schlicht::testing {

/// Code of the schlicht::Error thrown by fn, or nullopt-like sentinel text.
template <class Fn>
std::string thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return std::string(to_string(e.code()));
    }
    return "none";
}

inline std::complex<double> random_in_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::polar(radius * std::sqrt(unit(rng)), 2.0 * 3.14159265358979323846 * unit(rng));
}

}  // namespace schlicht::testing

#define CHECK_ERROR_CODE(expr, code) CHECK(::schlicht::testing::thrown_code([&] { (void)(expr); }) == #code)
