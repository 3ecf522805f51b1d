#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "parse.hpp"
#include "schlicht/error.hpp"

namespace schlicht::cli {

namespace {

using nlohmann::json;

RunReport run(const std::string& name, const RunConfig& config, json arguments,
              const std::function<void(RunReport&)>& body) {
    RunReport report;
    report.subcommand = name;
    report.config = config;
    report.arguments = std::move(arguments);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(report);
    } catch (const Error& e) {
        report.error_code = std::string(to_string(e.code()));
        report.error_message = e.what();
    } catch (const UsageError& e) {
        report.error_code = "Usage";
        report.error_message = e.what();
    }
    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// Radial sample points spread over the disk of the given radius.
std::vector<Complex> radial_samples(int count, double radius) {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<Complex> out;
    for (int k = 0; k < count; ++k) {
        const double r = radius * (k + 1) / count;
        out.push_back(std::polar(r, 2.0 * std::numbers::pi * std::fmod(golden * k, 1.0)));
    }
    return out;
}

Complex koebe_value(Complex z) {
    const Complex d = 1.0 - z;
    return z / (d * d);
}

}  // namespace

RunReport cmd_decompose(Complex alpha, Complex beta, const std::string& map_text, int n, const RunConfig& config) {
    json args{{"alpha", complex_json(alpha)}, {"beta", complex_json(beta)}, {"map", map_text}, {"n", n}};
    return run("decompose", config, std::move(args), [&](RunReport& report) {
        const MapSpec map = parse_map(map_text);
        const OmittedPair pair(alpha, beta);
        const auto options = config.decompose_options();
        const auto d = decomp::decompose(pair, map, n, options);
        const auto& cfg = config.decompose;

        const auto& coeffs = d.coefficients();
        double sum = 0.0, smallest = std::numeric_limits<double>::infinity();
        for (double a : coeffs) {
            sum += a;
            smallest = std::min(smallest, a);
        }

        double equal_distance = 0.0, imag = 0.0, range = 0.0;
        bool nodes_ok = true;
        for (const auto& level : d.tree().levels)
            for (const auto& node : level) {
                if (node.word.size() == 0) continue;
                const auto c = decomp::check_node(pair, node, cfg.node_tolerance);
                equal_distance = std::max(equal_distance, c.equal_distance_residual);
                imag = std::max(imag, std::abs(c.psi_prime_imag));
                range = std::max(range, std::abs(c.psi_prime_real));
                nodes_ok = nodes_ok && c.ok;
            }

        const auto samples = radial_samples(cfg.samples, cfg.sample_radius);
        const double reconstruction = decomp::verify_reconstruction(d, samples);
        const std::vector<Complex> disjoint_samples(samples.end() - std::min<std::ptrdiff_t>(cfg.disjointness_samples,
                                                                                              static_cast<std::ptrdiff_t>(samples.size())),
                                                    samples.end());
        const double disjointness = decomp::verify_disjointness(d, disjoint_samples);

        // Partition identity at random points of the disk |w| < r / 2.
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const decomp::LeafEvaluator evaluator(d.tree(), options.tree);
        double partition = 0.0;
        const double scale = std::ldexp(1.0, n);
        for (int k = 0; k < cfg.partition_points; ++k) {
            const Complex w = std::polar(0.5 * pair.radius() * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
            Complex total{0.0, 0.0};
            for (const auto& g : evaluator.evaluate(segment_path(pair, w, options.tree.branch))) total += g;
            partition = std::max(partition, std::abs(total - scale * w) / (scale * (1.0 + std::abs(w))));
        }

        json leaves = json::array();
        report.table.columns = {"word", "alpha_j", "x_re", "x_im", "derivative_re", "derivative_im", "psi_prime_re",
                                "psi_prime_im"};
        for (std::size_t j = 0; j < d.tree().leaves().size(); ++j) {
            const auto& leaf = d.tree().leaves()[j];
            leaves.push_back({{"word", leaf.word.str()},
                              {"alpha_j", coeffs[j]},
                              {"x", complex_json(leaf.value_at_zero)},
                              {"derivative", complex_json(leaf.derivative_at_zero)},
                              {"psi_prime", complex_json(leaf.psi_prime_at_value)}});
            report.table.rows.push_back({leaf.word.str(), coeffs[j], leaf.value_at_zero.real(), leaf.value_at_zero.imag(),
                                         leaf.derivative_at_zero.real(), leaf.derivative_at_zero.imag(),
                                         leaf.psi_prime_at_value.real(), leaf.psi_prime_at_value.imag()});
        }
        report.results = {{"coefficients", coeffs},
                          {"coefficient_sum", sum},
                          {"leaves", leaves},
                          {"max_reconstruction_error", reconstruction},
                          {"min_disjointness", disjointness},
                          {"max_partition_residual", partition},
                          {"max_equal_distance_residual", equal_distance},
                          {"max_psi_prime_imag", imag},
                          {"max_abs_psi_prime", range}};

        report.check("coefficient_sum_error", std::abs(sum - 1.0), "<", cfg.sum_tolerance);
        report.check("min_coefficient", smallest, ">", 0.0);
        report.check("reconstruction_error", reconstruction, "<", cfg.reconstruction_tolerance);
        report.check("disjointness", disjointness, ">", 0.0);
        report.check("partition_residual", partition, "<", cfg.reconstruction_tolerance);
        report.check("node_invariants", nodes_ok);
    });
}

RunReport cmd_fixedpoint(Complex alpha, Complex beta, Complex w, const RunConfig& config) {
    json args{{"alpha", complex_json(alpha)}, {"beta", complex_json(beta)}, {"w", complex_json(w)}};
    return run("fixedpoint", config, std::move(args), [&](RunReport& report) {
        const OmittedPair pair(alpha, beta);
        const double tol = config.fixedpoint.pole_tolerance;
        const Complex g = decomp::fixed_point(pair, w, tol);
        const double residual = decomp::verify_fixed_point(pair, w, tol);
        const double bound = config.fixedpoint.residual_tolerance * (1.0 + std::norm(g));
        report.results = {{"fixed_point", complex_json(g)}, {"residual", residual}, {"residual_bound", bound}};
        report.table.columns = {"g_re", "g_im", "residual"};
        report.table.rows.push_back({g.real(), g.imag(), residual});
        report.check("fixed_point_residual", residual, "<", bound);
    });
}

namespace {

void loewner_verify_ode(RunReport& report, const RunConfig& config) {
    const auto chain = loewner::LoewnerChain::koebe(config.chain_control());
    const auto& cfg = config.loewner;
    double max_error = 0.0, max_conservation = 0.0;
    report.table.columns = {"t", "z_re", "z_im", "ode_re", "ode_im", "explicit_re", "explicit_im", "error",
                            "conservation"};
    for (double t : cfg.grid_times)
        for (int i = 1; i <= cfg.grid_radii; ++i)
            for (int j = 0; j < cfg.grid_angles; ++j) {
                const Complex z = std::polar(cfg.grid_max_radius * i / cfg.grid_radii,
                                             2.0 * std::numbers::pi * j / cfg.grid_angles);
                const Complex f = loewner::ode_solve(chain, z, t);
                const Complex e = loewner::explicit_koebe_chain(z, t);
                const double err = std::abs(f - e);
                const double cons = std::abs(std::exp(t) * koebe_value(f) - koebe_value(z)) / std::abs(koebe_value(z));
                max_error = std::max(max_error, err);
                max_conservation = std::max(max_conservation, cons);
                report.table.rows.push_back({t, z.real(), z.imag(), f.real(), f.imag(), e.real(), e.imag(), err, cons});
            }
    report.results = {{"max_oracle_error", max_error},
                      {"max_relative_conservation_error", max_conservation},
                      {"grid_points", report.table.rows.size()}};
    report.check("oracle_error", max_error, "<", cfg.oracle_tolerance);
    report.check("conservation_error", max_conservation, "<", cfg.conservation_tolerance);
}

void loewner_theorem2(RunReport& report, const RunConfig& config) {
    const auto L = parse_functional(config.loewner.functional);
    const auto chain = loewner::LoewnerChain::koebe(config.chain_control());
    const auto support = loewner::SupportPointData::from_map(MapSpec::koebe(), {-1.0, 0.0});
    const auto options = config.theorem2_options();
    json rows = json::array();
    report.table.columns = {"t", "leading_re", "second_order_re", "remainder_re", "full_re", "sum_real",
                            "closure_residual", "tail_bound", "remainder_abs"};
    std::vector<double> remainders;
    for (double t : config.loewner.t) {
        const auto r = loewner::theorem2_report(L, chain, support, t, options);
        remainders.push_back(std::abs(r.remainder));
        rows.push_back({{"t", t},
                        {"t_max", r.t_max},
                        {"leading", complex_json(r.leading)},
                        {"second_order", complex_json(r.second_order)},
                        {"remainder", complex_json(r.remainder)},
                        {"remainder_direct", complex_json(r.remainder_direct)},
                        {"full", complex_json(r.full)},
                        {"sum_real", r.sum_real},
                        {"closure_residual", r.closure_residual},
                        {"tail_bound", r.tail_bound},
                        {"inequality_holds", r.inequality_holds}});
        report.table.rows.push_back({t, r.leading.real(), r.second_order.real(), r.remainder.real(), r.full.real(),
                                     r.sum_real, r.closure_residual, r.tail_bound, std::abs(r.remainder)});
        report.check("sum_real[t=" + std::to_string(t) + "]", r.sum_real, "<=", config.loewner.inequality_tolerance);
        report.check("closure_residual[t=" + std::to_string(t) + "]", r.closure_residual, "<",
                     config.loewner.closure_tolerance);
    }
    json ratios = json::array();
    for (std::size_t k = 1; k < remainders.size(); ++k)
        ratios.push_back(remainders[k - 1] > 0.0 ? json(remainders[k] / remainders[k - 1]) : json());
    report.results = {{"functional", L.describe()},
                      {"support_point", {{"map", support.map.name()}, {"z0", complex_json(support.z0)},
                                         {"w0", complex_json(support.w0)}}},
                      {"rows", rows},
                      {"remainder_decay_ratios", ratios}};
}

void loewner_remark1(RunReport& report, const RunConfig& config) {
    const auto rows = loewner::remark1_check(config.extraction_options());
    const double tol = config.loewner.remark1_tolerance;
    json out = json::array();
    report.table.columns = {"map", "z0_re", "z0_im", "l_of_square_re", "l_of_square_im", "real_rotated"};
    const double expected_rotated[] = {-1.0, 1.0};
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        out.push_back({{"map", r.map},
                       {"z0", complex_json(r.z0)},
                       {"l_of_square", complex_json(r.l_of_square)},
                       {"real_rotated", r.real_rotated}});
        report.table.rows.push_back({r.map, r.z0.real(), r.z0.imag(), r.l_of_square.real(), r.l_of_square.imag(),
                                     r.real_rotated});
        report.check("l_of_square_error[" + r.map + "]", std::abs(r.l_of_square - 1.0), "<", tol);
        report.check("real_rotated_error[" + r.map + "]", std::abs(r.real_rotated - expected_rotated[k]), "<", tol);
    }
    report.results = {{"functional", "a2"}, {"rows", out}};
}

}  // namespace

RunReport cmd_loewner(const std::string& task, const RunConfig& config) {
    json args{{"task", task}};
    if (task == "theorem2") {
        args["functional"] = config.loewner.functional;
        args["t"] = config.loewner.t;
    }
    return run("loewner", config, std::move(args), [&](RunReport& report) {
        if (task == "verify-ode")
            loewner_verify_ode(report, config);
        else if (task == "theorem2")
            loewner_theorem2(report, config);
        else if (task == "remark1")
            loewner_remark1(report, config);
        else
            throw UsageError("unknown loewner task '" + task + "' (expected verify-ode, theorem2 or remark1)");
    });
}

RunReport cmd_extremal(const std::string& functional, int n, const RunConfig& config) {
    json args{{"functional", functional}, {"n", n}};
    return run("extremal", config, std::move(args), [&](RunReport& report) {
        const auto L = parse_functional(functional);
        const auto search = config.search_config();
        const auto r = polyext::maximize_functional(L, n, search);

        json coefficients = json::array();
        for (const auto& c : r.polynomial.coefficients()) coefficients.push_back(complex_json(c));
        json zeros = json::array();
        for (std::size_t k = 0; k < r.zero_angles.size(); ++k)
            zeros.push_back({{"angle", r.zero_angles[k]},
                             {"second_derivative", complex_json(r.second_derivative_at_zeros[k])},
                             {"second_derivative_abs", std::abs(r.second_derivative_at_zeros[k])}});
        json near = json::array();
        for (const auto& m : r.near_optimal) {
            json tail = json::array();
            for (const auto& a : m.polynomial.tail()) tail.push_back(complex_json(a));
            near.push_back({{"tail", tail}, {"objective", m.objective}});
        }
        const auto& cert = r.certificate;
        json certificate{{"boundary_samples", cert.boundary_samples},
                         {"min_boundary_separation", cert.min_boundary_separation},
                         {"derivative_winding", cert.derivative_winding},
                         {"winding_radius", cert.winding_radius},
                         {"verdict", polyext::to_string(cert.verdict)}};
        if (cert.witness) certificate["witness"] = {cert.witness->first, cert.witness->second};

        report.results = {{"functional", L.describe()},
                          {"objective", r.objective},
                          {"functional_value", complex_json(r.functional_value)},
                          {"phase", r.phase},
                          {"coefficients", coefficients},
                          {"certificate", certificate},
                          {"boundary_derivative_min", r.boundary_derivative_min},
                          {"boundary_derivative_angle", r.boundary_derivative_angle},
                          {"zeros", zeros},
                          {"near_optimal", near},
                          {"feasible_starts", r.feasible_starts},
                          {"evaluations", r.evaluations}};
        report.table.columns = {"theta", "abs_derivative"};
        for (const auto& [theta, value] : polyext::derivative_trace(r.polynomial, config.extremal.trace_samples))
            report.table.rows.push_back({theta, value});

        report.check("certified", cert.verdict == polyext::Verdict::Certified);
        report.check("boundary_derivative_min", r.boundary_derivative_min, "<", config.extremal.zero_tolerance);
        report.check("zero_detected", !r.zero_angles.empty());
        double weakest = std::numeric_limits<double>::infinity();
        for (const auto& s : r.second_derivative_at_zeros) weakest = std::min(weakest, std::abs(s));
        if (!r.zero_angles.empty())
            report.check("min_second_derivative_at_zeros", weakest, ">", config.extremal.simplicity_tolerance);
    });
}

RunReport cmd_perturbation(const std::vector<Complex>& f, const std::vector<Complex>& g, const RunConfig& config) {
    json fj = json::array(), gj = json::array();
    for (auto c : f) fj.push_back(complex_json(c));
    for (auto c : g) gj.push_back(complex_json(c));
    return run("perturbation", config, {{"f", fj}, {"g", gj}}, [&](RunReport& report) {
        const auto r = perturbation_radius(polynomial_function(f), polynomial_function(g), config.perturbation_options());
        report.results = {{"delta", r.delta},
                          {"epsilon", r.epsilon},
                          {"max_quotient", r.max_quotient},
                          {"boundary_derivative_min", r.boundary_derivative_min},
                          {"boundary_derivative_angle", r.boundary_derivative_angle},
                          {"grid_points", config.perturbation.gridsize * config.perturbation.gridsize}};
        report.table.columns = {"delta", "epsilon", "max_quotient", "boundary_derivative_min"};
        report.table.rows.push_back({r.delta, r.epsilon, r.max_quotient, r.boundary_derivative_min});
        report.check("delta_positive", r.delta, ">", 0.0);
    });
}

}  // namespace schlicht::cli
