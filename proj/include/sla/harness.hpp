#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sla/analysis.hpp"
#include "sla/array.hpp"
#include "sla/esprit.hpp"
#include "sla/simulate.hpp"
#include "sla/types.hpp"

namespace sla {

enum class VariantChoice { DA, SS, Both };

std::string variant_name(Variant v);
VariantChoice parse_variant(const std::string& text);

/// Sentinel for the delta column of sweeps that do not vary the separation.
inline constexpr double kNoDelta = -1.0;

/// One Monte Carlo sweep: a geometry, a scene template and the grids to run.
/// Sigma entries are noise standard deviations; the CSV reports sigma^2.
struct ExperimentConfig {
    std::string experiment_id = "sweep";
    Geometry geometry = mra_6_14();
    RealVector freqs;  // empty selects the 8-source experiment set
    RealVector powers; // empty selects unit powers
    VariantChoice variant = VariantChoice::DA;
    std::vector<Index> l_grid;
    std::vector<double> sigma_grid;
    std::vector<double> delta_grid; // empty: separation sweep disabled
    int trials = 200;
    std::uint64_t base_seed = 20260808ULL;
    std::string output_path; // empty: derived from experiment_id
    int workers = 0;         // 0: hardware concurrency
    bool emit_plot_data = false;
};

/// Throws ConfigError when grids are empty, trials < 1 or K > M-1.
void validate_config(const ExperimentConfig& config);

/// One grid point of a sweep, fully resolved (delta already applied to the
/// scene's last frequency).
struct TrialPoint {
    std::string experiment_id;
    Geometry geometry;
    SourceScene scene;
    Variant variant = Variant::DA;
    Index n_snapshots = 0;
    double delta = kNoDelta;
    std::uint64_t base_seed = 0;
};

struct TrialResult {
    std::string experiment_id;
    Variant variant = Variant::DA;
    Index n_snapshots = 0;
    double sigma2 = 0.0;
    double delta = kNoDelta;
    int trial_index = 0;
    std::uint64_t seed = 0;
    double md = 0.0;
    double md_bound = 0.0;
    bool da_ss_equal = false;
    bool error_flag = false;
    double elapsed_ms = 0.0;
};

/// Simulate, estimate, score and bound one trial. The RNG stream derives
/// solely from (base_seed, trial_index), so any trial can be reproduced in
/// isolation and scheduling cannot change results. Estimator failures
/// (rank collapse, degenerate eigenvalues) are recorded as md = 0.5 with the
/// error flag set rather than thrown.
TrialResult run_trial(const TrialPoint& point, int trial_index);

struct AggregateRow {
    std::string experiment_id;
    Variant variant = Variant::DA;
    Index n_snapshots = 0;
    double sigma2 = 0.0;
    double delta = kNoDelta;
    int trials = 0;
    double mean_md = 0.0;
    double median_md = 0.0;
    double md_bound = 0.0;
    double error_rate = 0.0;
};

struct SweepResult {
    std::vector<TrialPoint> points;
    std::vector<TrialResult> trials;     // points-major, trial-minor order
    std::vector<AggregateRow> aggregates; // one per point
    std::string csv_path;
};

/// Expand the grids into trial points in deterministic order:
/// variant-major, then sigma, then delta, then L.
std::vector<TrialPoint> expand_grid(const ExperimentConfig& config);

/// Run every (point, trial) pair, possibly on several threads, aggregate,
/// and write the CSV (trial rows, then an aggregate section). Also writes
/// per-curve plot files when requested.
SweepResult run_sweep(const ExperimentConfig& config);

/// Least-squares slope of log10(md) against log10(L); needs >= 3 points
/// with positive md.
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

std::string trial_csv_header();
std::string trial_csv_row(const TrialResult& row);
std::string aggregate_csv_header();
std::string aggregate_csv_row(const AggregateRow& row);

/// Parse the flat `key = value` config format; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Parse a comma-separated list of reals; `what` names the field in errors.
std::vector<double> parse_real_list(const std::string& text, const std::string& what);

/// Overlay parsed keys onto a config; unknown keys raise ConfigError.
void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries);

/// Resolve the output path: explicit absolute paths win; relative or empty
/// paths land in $SLA_ESPRIT_OUTDIR when set, else the working directory.
std::string resolve_output_path(const ExperimentConfig& config);

/// Presets mirroring the three benchmark experiments at desk scale.
ExperimentConfig experiment1_preset();
ExperimentConfig experiment2_preset();
ExperimentConfig experiment3_preset();

} // namespace sla
