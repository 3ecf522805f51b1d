#include "config.hpp"

#include <cstdlib>
#include <fstream>

#include "parse.hpp"

namespace schlicht::cli {

extern const char* const kDefaultConfigText;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BranchConfig, tolerance, step_fraction)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DecomposeConfig, cap, samples, sample_radius, disjointness_samples,
                                   partition_points, reconstruction_tolerance, node_tolerance, sum_tolerance,
                                   omission_samples, omission_radius)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FixedPointConfig, pole_tolerance, residual_tolerance)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OdeConfig, initial_step, rtol, atol, max_step, horizon, singular_margin)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(QuadratureConfig, panel_width, t_max_offset, radius, samples)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LoewnerConfig, functional, t, inequality_tolerance, closure_tolerance, grid_radii,
                                   grid_angles, grid_max_radius, grid_times, oracle_tolerance, conservation_tolerance,
                                   remark1_tolerance)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CertificationConfig, search_samples, final_samples, separation_tolerance,
                                   shrunk_radius)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ExtremalConfig, starts, max_evaluations, restarts, initial_step, start_budget,
                                   zero_tolerance, simplicity_tolerance, near_optimal_fraction, trace_samples)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PerturbationConfig, gridsize, boundary_tolerance)

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"seed", c.seed},
                       {"threads", c.threads},
                       {"format", c.format},
                       {"output", c.output},
                       {"table", c.table},
                       {"branch", c.branch},
                       {"decompose", c.decompose},
                       {"fixedpoint", c.fixedpoint},
                       {"ode", c.ode},
                       {"quadrature", c.quadrature},
                       {"loewner", c.loewner},
                       {"certification", c.certification},
                       {"extremal", c.extremal},
                       {"perturbation", c.perturbation}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    j.at("seed").get_to(c.seed);
    j.at("threads").get_to(c.threads);
    j.at("format").get_to(c.format);
    j.at("output").get_to(c.output);
    j.at("table").get_to(c.table);
    j.at("branch").get_to(c.branch);
    j.at("decompose").get_to(c.decompose);
    j.at("fixedpoint").get_to(c.fixedpoint);
    j.at("ode").get_to(c.ode);
    j.at("quadrature").get_to(c.quadrature);
    j.at("loewner").get_to(c.loewner);
    j.at("certification").get_to(c.certification);
    j.at("extremal").get_to(c.extremal);
    j.at("perturbation").get_to(c.perturbation);
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError("config: " + what);
}

void check_keys(const nlohmann::json& user, const nlohmann::json& reference, const std::string& prefix) {
    if (!user.is_object()) throw UsageError("config: '" + prefix + "' must be an object");
    for (const auto& [key, value] : user.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (!reference.contains(key)) throw UsageError("config: unknown key '" + name + "'");
        if (reference[key].is_object()) check_keys(value, reference[key], name);
    }
}

}  // namespace

void RunConfig::validate() const {
    require(threads >= 1, "threads must be at least 1");
    require(format == "json" || format == "csv", "format must be json or csv");
    for (double tol : {branch.tolerance, decompose.reconstruction_tolerance, decompose.node_tolerance,
                       decompose.sum_tolerance, fixedpoint.pole_tolerance, fixedpoint.residual_tolerance, ode.rtol,
                       ode.atol, loewner.inequality_tolerance, loewner.closure_tolerance, loewner.oracle_tolerance,
                       loewner.conservation_tolerance, loewner.remark1_tolerance, certification.separation_tolerance,
                       extremal.zero_tolerance, extremal.simplicity_tolerance, perturbation.boundary_tolerance,
                       ode.singular_margin})
        require(tol > 0.0, "all tolerances must be positive");
    require(branch.step_fraction > 0.0 && branch.step_fraction < 1.0, "branch.step_fraction must be in (0, 1)");
    require(decompose.cap >= 1, "decompose.cap must be positive");
    require(decompose.samples >= 1 && decompose.disjointness_samples >= 1 && decompose.partition_points >= 1,
            "decompose sample counts must be positive");
    require(decompose.sample_radius > 0.0 && decompose.sample_radius < 1.0, "decompose.sample_radius must be in (0, 1)");
    require(decompose.omission_radius > 0.0 && decompose.omission_radius < 1.0,
            "decompose.omission_radius must be in (0, 1)");
    require(ode.initial_step > 0.0 && ode.max_step > 0.0 && ode.horizon > 0.0, "ode steps and horizon must be positive");
    require(quadrature.panel_width > 0.0, "quadrature.panel_width must be positive");
    require(quadrature.t_max_offset >= 20.0, "quadrature.t_max_offset must be at least 20");
    require(quadrature.radius > 0.0 && quadrature.radius < 1.0, "quadrature.radius must be in (0, 1)");
    require(loewner.grid_radii >= 1 && loewner.grid_angles >= 1, "loewner grid sizes must be positive");
    require(loewner.grid_max_radius > 0.0 && loewner.grid_max_radius <= 0.95,
            "loewner.grid_max_radius must be in (0, 0.95]");
    require(certification.search_samples >= 512 && certification.final_samples >= 1024,
            "certification needs search_samples >= 512 and final_samples >= 1024");
    require(certification.shrunk_radius > 0.0 && certification.shrunk_radius < 1.0,
            "certification.shrunk_radius must be in (0, 1)");
    require(extremal.starts >= 1 && extremal.max_evaluations >= 1 && extremal.restarts >= 0,
            "extremal search sizes must be positive");
    require(extremal.trace_samples >= 1024, "extremal.trace_samples must be at least 1024");
    require(perturbation.gridsize >= 2, "perturbation.gridsize must be at least 2");
}

decomp::DecomposeOptions RunConfig::decompose_options() const {
    decomp::DecomposeOptions o;
    o.tree.cap = decompose.cap;
    o.tree.branch.branch_tolerance = branch.tolerance;
    o.tree.branch.step_fraction = branch.step_fraction;
    o.omission_samples = static_cast<std::size_t>(decompose.omission_samples);
    o.omission_radius = decompose.omission_radius;
    return o;
}

loewner::ChainControl RunConfig::chain_control() const {
    loewner::ChainControl c;
    c.step.initial_step = ode.initial_step;
    c.step.rtol = ode.rtol;
    c.step.atol = ode.atol;
    c.step.max_step = ode.max_step;
    c.horizon = ode.horizon;
    c.singular_margin = ode.singular_margin;
    return c;
}

ExtractionOptions RunConfig::extraction_options() const {
    ExtractionOptions e;
    e.radius = quadrature.radius;
    e.samples = static_cast<std::size_t>(quadrature.samples);
    e.threads = threads;
    return e;
}

loewner::TailReportOptions RunConfig::theorem2_options() const {
    loewner::TailReportOptions o;
    o.extraction = extraction_options();
    o.t_max_offset = quadrature.t_max_offset;
    o.panel_width = quadrature.panel_width;
    o.tolerance = loewner.inequality_tolerance;
    return o;
}

polyext::SearchConfig RunConfig::search_config() const {
    polyext::SearchConfig s;
    s.starts = extremal.starts;
    s.seed = seed;
    s.search_samples = certification.search_samples;
    s.final_samples = certification.final_samples;
    s.max_evaluations = extremal.max_evaluations;
    s.restarts = extremal.restarts;
    s.initial_step = extremal.initial_step;
    s.start_budget = extremal.start_budget;
    s.zero_tolerance = extremal.zero_tolerance;
    s.simplicity_tolerance = extremal.simplicity_tolerance;
    s.near_optimal_fraction = extremal.near_optimal_fraction;
    s.threads = threads;
    s.certify.separation_tolerance = certification.separation_tolerance;
    s.certify.shrunk_radius = certification.shrunk_radius;
    return s;
}

PerturbationOptions RunConfig::perturbation_options() const {
    PerturbationOptions p;
    p.gridsize = perturbation.gridsize;
    p.boundary_tolerance = perturbation.boundary_tolerance;
    p.threads = threads;
    return p;
}

const nlohmann::json& default_config_document() {
    static const nlohmann::json doc = nlohmann::json::parse(kDefaultConfigText);
    return doc;
}

RunConfig load_config(const std::optional<std::string>& path) {
    nlohmann::json doc = default_config_document();
    std::string file = path.value_or("");
    if (file.empty())
        if (const char* env = std::getenv("SCHLICHT_CONFIG")) file = env;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw UsageError("cannot read config file '" + file + "'");
        nlohmann::json user;
        try {
            user = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file '" + file + "': " + e.what());
        }
        check_keys(user, doc, "");
        doc.merge_patch(user);
    }
    RunConfig config;
    try {
        doc.get_to(config);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    config.validate();
    return config;
}

}  // namespace schlicht::cli
