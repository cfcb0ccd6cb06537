#pragma once

#include <limits>
#include <string>
#include <vector>

#include "sbl/config.hpp"
#include "sbl/onebody.hpp"

namespace sbl {

struct CheckStatus {
    std::string name;
    std::string status;  // "ok", "fail", "skip", or "off"
    std::string reason;  // short machine-readable code, empty when ok
};

struct ResultRow {
    std::vector<double> coords;  // one value per sweep axis, axis order
    double e_full = std::numeric_limits<double>::quiet_NaN();
    double e_minus = std::numeric_limits<double>::quiet_NaN();
    double e_plus = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    int degeneracy = -1;    // -1 when the ground check did not run
    int excited_flag = -1;  // -1 unknown, otherwise 0/1
    double offblock = std::numeric_limits<double>::quiet_NaN();
    double leakage = std::numeric_limits<double>::quiet_NaN();
    double pullthrough_rel = std::numeric_limits<double>::quiet_NaN();
    std::vector<CheckStatus> checks;  // every known check, fixed order
    double timing_ms = 0;             // kept out of the CSV

    bool any_failure() const;
};

struct PointReport {
    ResultRow row;
    std::string json;  // serialized object with the full per-check reports
};

// Grid rows in emission order: cartesian product of the axis value lists,
// the last axis fastest.
std::vector<std::vector<double>> grid_points(const SweepConfig& config);

// Model at one grid point: the base template with each axis value applied
// ("eta" replaces eta, "coupling_scale" scales every coupling vector,
// "alphaK" replaces the K-th coefficient).
ModelParams apply_axes(const SweepConfig& config, const std::vector<double>& coords);

// Runs the configured checks at one grid point. Check failures land in the
// row statuses; only configuration-level misuse throws.
PointReport evaluate_point(const SweepConfig& config, const std::vector<double>& coords);

// Worker-count precedence: command line, then the SBL_WORKERS environment
// variable, then the config, then 1.
int resolve_workers(const SweepConfig& config, int cli_override);

struct SweepOutcome {
    std::string csv_path;
    std::string json_path;
    std::size_t rows = 0;
    bool any_failure = false;
};

// Evaluates the whole grid (a work queue over points, results re-ordered by
// grid index) and writes <dir>/sweep.csv plus <dir>/sweep.json. The CSV is a
// pure function of config and seed; timing lives only in the JSON sidecar.
SweepOutcome run_sweep(const SweepConfig& config, const std::string& out_dir,
                       int workers_override = 0);

// Plot data for the level picture: one row per eta with the two fiber ground
// energies and the threshold line above the lower one. The config must sweep
// exactly the eta axis.
void emit_figure_data(const SweepConfig& config, const std::string& out_path);

// Cutoff-refinement table for the base model; returns false when the energy
// increments stopped shrinking (the non-Cauchy flag).
bool emit_convergence(const SweepConfig& config, const std::string& out_path);

}  // namespace sbl
