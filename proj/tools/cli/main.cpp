#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "parse.hpp"

namespace {

using namespace schlicht;
using namespace schlicht::cli;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

int emit(const RunReport& report, const RunConfig& config, bool include_timing) {
    if (config.format == "csv")
        write_text(config.output, report.table.to_csv());
    else
        write_text(config.output, report.to_json(include_timing).dump(2) + "\n");
    if (!config.table.empty()) write_text(config.table, report.table.to_csv());
    if (report.error_code) std::cerr << "schlicht: " << report.error_message << "\n";
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex decompositions, Loewner chains and extremal polynomials of schlicht functions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> format, output, table;
    bool omit_timing = false;
    app.add_option("--config", config_path, "Config file layered over the defaults (else $SCHLICHT_CONFIG)");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output, "Output path (default stdout)");
    app.add_option("--table", table, "Also write the flat table as CSV to this path");
    app.add_flag("--omit-timing", omit_timing, "Leave wall-clock duration out of the report");

    std::string alpha_text, beta_text, w_text, map_text = "identity";
    int n = 1;
    auto* decompose = app.add_subcommand("decompose", "Convex decomposition for a pair of omitted values");
    decompose->add_option("--alpha", alpha_text, "First omitted value (a+bi)")->required();
    decompose->add_option("--beta", beta_text, "Second omitted value (a+bi)")->required();
    decompose->add_option("--map", map_text, "Base map")->capture_default_str();
    decompose->add_option("-n", n, "Recursion depth")->check(CLI::PositiveNumber)->capture_default_str();

    auto* fixedpoint = app.add_subcommand("fixedpoint", "Common fixed point of the two-sign recursion");
    fixedpoint->add_option("--alpha", alpha_text, "First omitted value (a+bi)")->required();
    fixedpoint->add_option("--beta", beta_text, "Second omitted value (a+bi)")->required();
    fixedpoint->add_option("--w", w_text, "Point w (a+bi)")->required();

    std::string task, functional;
    std::optional<std::string> t_list;
    auto* loewner_cmd = app.add_subcommand("loewner", "Loewner chain computations");
    loewner_cmd->add_option("task", task, "verify-ode | theorem2 | remark1")
        ->required()
        ->check(CLI::IsMember({"verify-ode", "theorem2", "remark1"}));
    loewner_cmd->add_option("--functional", functional, "Functional for theorem2");
    loewner_cmd->add_option("--t", t_list, "Comma-separated times for theorem2");

    std::string extremal_functional;
    int degree = 2;
    auto* extremal = app.add_subcommand("extremal", "Maximize |L(p)| over univalent polynomials of degree <= n");
    extremal->add_option("--functional", extremal_functional, "a<j> | point:<z> | combo:<j>@<w>,...")->required();
    extremal->add_option("-n", degree, "Degree cap")->check(CLI::PositiveNumber)->capture_default_str();

    std::string f_text = "0,1", g_text = "0,0,1";
    auto* perturbation = app.add_subcommand("perturbation", "Injectivity radius of f + w g");
    perturbation->add_option("--f", f_text, "Coefficients c0,c1,... of f")->capture_default_str();
    perturbation->add_option("--g", g_text, "Coefficients c0,c1,... of g")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig config = load_config(config_path);
        if (seed) config.seed = *seed;
        if (threads) config.threads = *threads;
        if (format) config.format = *format;
        if (output) config.output = *output;
        if (table) config.table = *table;
        if (!functional.empty()) config.loewner.functional = functional;
        if (t_list) config.loewner.t = parse_real_list(*t_list);
        config.validate();

        RunReport report;
        if (*decompose)
            report = cmd_decompose(parse_complex(alpha_text), parse_complex(beta_text), map_text, n, config);
        else if (*fixedpoint)
            report = cmd_fixedpoint(parse_complex(alpha_text), parse_complex(beta_text), parse_complex(w_text), config);
        else if (*loewner_cmd)
            report = cmd_loewner(task, config);
        else if (*extremal)
            report = cmd_extremal(extremal_functional, degree, config);
        else
            report = cmd_perturbation(parse_complex_list(f_text), parse_complex_list(g_text), config);
        return emit(report, config, !omit_timing);
    } catch (const UsageError& e) {
        std::cerr << "schlicht: " << e.what() << "\n";
        return kExitUsage;
    }
}
