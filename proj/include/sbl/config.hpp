#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sbl/onebody.hpp"

namespace sbl {

enum class CheckKind { decompose, ground, excited, hvz, pullthrough, convergence };

const std::vector<CheckKind>& all_checks();
std::string check_name(CheckKind kind);
std::optional<CheckKind> check_from_name(const std::string& name);

struct SweepAxis {
    std::string name;  // "eta", "coupling_scale", or "alpha<K>"
    std::vector<double> values;
};

// Parsed run description. The model template is kept in raw pieces so the
// struct stays default-constructible; params() assembles and validates the
// model object.
struct SweepConfig {
    std::string label = "run";
    double eta = 0.0;
    std::vector<double> alpha;
    std::vector<Mode> modes;
    std::vector<std::vector<Complex>> coupling;  // one row per interaction order

    int n_max = 6;
    std::uint64_t seed = 1;
    std::vector<CheckKind> checks;  // defaults to decompose + ground
    std::vector<SweepAxis> axes;
    std::vector<int> schedule;  // cutoff schedule for convergence runs
    int workers = 0;            // 0 = not set here
    double solver_tol = 1e-10;
    std::size_t dense_threshold = 800;
    // When set, the pull-through check enforces this relative-residual bound;
    // otherwise the residual is recorded without a verdict.
    double pullthrough_tol = std::numeric_limits<double>::quiet_NaN();
    std::string output;  // default output location, overridden on the command line

    ModelParams params() const;
};

// Line-oriented text format: '#' comments, global `key = value` lines, and
// the block sections [modes], [coupling K], [sweep NAME], [schedule].
// Errors carry the config line number.
SweepConfig load_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace sbl
