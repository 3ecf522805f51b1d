#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schlicht/coefficients.hpp"
#include "schlicht/decomposition.hpp"
#include "schlicht/loewner.hpp"
#include "schlicht/perturbation.hpp"
#include "schlicht/polyext.hpp"

namespace schlicht::cli {

struct BranchConfig {
    double tolerance;
    double step_fraction;
};

struct DecomposeConfig {
    int cap;
    int samples;
    double sample_radius;
    int disjointness_samples;
    int partition_points;
    double reconstruction_tolerance;
    double node_tolerance;
    double sum_tolerance;
    int omission_samples;
    double omission_radius;
};

struct FixedPointConfig {
    double pole_tolerance;
    double residual_tolerance;
};

struct OdeConfig {
    double initial_step;
    double rtol;
    double atol;
    double max_step;
    double horizon;
    double singular_margin;
};

struct QuadratureConfig {
    double panel_width;
    double t_max_offset;
    double radius;
    int samples;
};

struct LoewnerConfig {
    std::string functional;
    std::vector<double> t;
    double inequality_tolerance;
    double closure_tolerance;
    int grid_radii;
    int grid_angles;
    double grid_max_radius;
    std::vector<double> grid_times;
    double oracle_tolerance;
    double conservation_tolerance;
    double remark1_tolerance;
};

struct CertificationConfig {
    int search_samples;
    int final_samples;
    double separation_tolerance;
    double shrunk_radius;
};

struct ExtremalConfig {
    int starts;
    int max_evaluations;
    int restarts;
    double initial_step;
    double start_budget;
    double zero_tolerance;
    double simplicity_tolerance;
    double near_optimal_fraction;
    int trace_samples;
};

struct PerturbationConfig {
    int gridsize;
    double boundary_tolerance;
};

/// Every tunable of a run. Loaded from the checked-in defaults, then an
/// optional override file, then command-line flags.
struct RunConfig {
    std::uint64_t seed;
    unsigned threads;
    std::string format;  // "json" or "csv"
    std::string output;  // empty: stdout
    std::string table;   // extra CSV path, empty: none
    BranchConfig branch;
    DecomposeConfig decompose;
    FixedPointConfig fixedpoint;
    OdeConfig ode;
    QuadratureConfig quadrature;
    LoewnerConfig loewner;
    CertificationConfig certification;
    ExtremalConfig extremal;
    PerturbationConfig perturbation;

    /// Throws UsageError when a tolerance or size is out of range.
    void validate() const;

    decomp::DecomposeOptions decompose_options() const;
    loewner::ChainControl chain_control() const;
    loewner::TailReportOptions theorem2_options() const;
    ExtractionOptions extraction_options() const;
    polyext::SearchConfig search_config() const;
    PerturbationOptions perturbation_options() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// The checked-in defaults document.
const nlohmann::json& default_config_document();

/// Defaults merged with the file at `path`, or at $SCHLICHT_CONFIG when
/// `path` is empty. Unknown keys are usage errors.
RunConfig load_config(const std::optional<std::string>& path);

}  // namespace schlicht::cli
