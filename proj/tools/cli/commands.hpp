#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace schlicht::cli {

RunReport cmd_decompose(Complex alpha, Complex beta, const std::string& map, int n, const RunConfig& config);

RunReport cmd_fixedpoint(Complex alpha, Complex beta, Complex w, const RunConfig& config);

/// task is verify-ode, theorem2 or remark1; theorem2 reads the functional and
/// the t list from config.loewner.
RunReport cmd_loewner(const std::string& task, const RunConfig& config);

RunReport cmd_extremal(const std::string& functional, int n, const RunConfig& config);

/// f and g given by coefficient lists c0, c1, ...
RunReport cmd_perturbation(const std::vector<Complex>& f, const std::vector<Complex>& g, const RunConfig& config);

}  // namespace schlicht::cli
