#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schlicht/branch.hpp"

namespace schlicht::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitComputation = 3,
    kExitConstantFunctional = 4,
};

/// One verified quantity: value, relation and threshold.
struct Check {
    std::string name;
    double value = 0.0;
    std::string relation;  // "<", "<=", ">", "==" (boolean checks use 1/0)
    double threshold = 0.0;
    bool passed = false;
};

/// Flat table keyed by column headers; rendered as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    std::string to_csv() const;
};

struct RunReport {
    std::string subcommand;
    nlohmann::json config;
    nlohmann::json arguments = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<Check> checks;
    Table table;
    double duration_seconds = 0.0;
    std::optional<std::string> error_code;
    std::string error_message;

    void check(std::string name, double value, std::string relation, double threshold);
    void check(std::string name, bool ok);

    bool passed() const;
    int exit_code() const;
    /// Timing is the only nondeterministic field and can be left out.
    nlohmann::json to_json(bool include_timing = true) const;
};

nlohmann::json complex_json(Complex z);

}  // namespace schlicht::cli
