#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schlicht::cli {

namespace {

std::string csv_cell(const nlohmann::json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted.push_back('"');
            quoted.push_back(c);
        }
        return quoted + "\"";
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isnan(d)) return "nan";
        if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    }
    return v.dump();
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
        out << '\n';
    }
    return out.str();
}

void RunReport::check(std::string name, double value, std::string relation, double threshold) {
    bool ok = false;
    if (relation == "<")
        ok = value < threshold;
    else if (relation == "<=")
        ok = value <= threshold;
    else if (relation == ">")
        ok = value > threshold;
    else if (relation == "==")
        ok = value == threshold;
    checks.push_back({std::move(name), value, std::move(relation), threshold, ok});
}

void RunReport::check(std::string name, bool ok) { check(std::move(name), ok ? 1.0 : 0.0, "==", 1.0); }

bool RunReport::passed() const {
    return !error_code && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

int RunReport::exit_code() const {
    if (error_code) {
        if (*error_code == "ConstantFunctional") return kExitConstantFunctional;
        if (*error_code == "InvalidPair" || *error_code == "InvalidArgument" || *error_code == "Usage")
            return kExitUsage;
        return kExitComputation;
    }
    return passed() ? kExitOk : kExitVerificationFailed;
}

nlohmann::json RunReport::to_json(bool include_timing) const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks) {
        checks_json.push_back(
            {{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"threshold", c.threshold}, {"passed", c.passed}});
    }
    nlohmann::json doc{{"subcommand", subcommand},
                       {"seed", config.value("seed", nlohmann::json())},
                       {"config", config},
                       {"arguments", arguments},
                       {"results", results},
                       {"verifications", checks_json},
                       {"passed", passed()}};
    if (error_code) doc["error"] = {{"code", *error_code}, {"message", error_message}};
    if (include_timing) doc["duration_seconds"] = duration_seconds;
    return doc;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace schlicht::cli
