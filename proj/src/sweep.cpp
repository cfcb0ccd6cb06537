#include "sbl/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sbl/model.hpp"
#include "sbl/pullthrough.hpp"
#include "sbl/spectra.hpp"

namespace sbl {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            if (!out) throw Error("failed writing " + tmp);
        }
        fs::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

EigensolveOptions solver_options(const SweepConfig& config) {
    EigensolveOptions opt;
    opt.tol = config.solver_tol;
    opt.dense_threshold = config.dense_threshold;
    opt.seed = config.seed;
    return opt;
}

bool requested(const SweepConfig& config, CheckKind kind) {
    for (CheckKind k : config.checks)
        if (k == kind) return true;
    return false;
}

}  // namespace

bool ResultRow::any_failure() const {
    for (const auto& st : checks)
        if (st.status == "fail") return true;
    return false;
}

std::vector<std::vector<double>> grid_points(const SweepConfig& config) {
    std::vector<std::vector<double>> out;
    std::vector<double> cur(config.axes.size());
    const std::function<void(std::size_t)> recurse = [&](std::size_t d) {
        if (d == config.axes.size()) {
            out.push_back(cur);
            return;
        }
        for (double v : config.axes[d].values) {
            cur[d] = v;
            recurse(d + 1);
        }
    };
    recurse(0);
    return out;
}

ModelParams apply_axes(const SweepConfig& config, const std::vector<double>& coords) {
    if (coords.size() != config.axes.size())
        throw PreconditionError("coordinate count does not match the sweep axes");
    SweepConfig point = config;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const std::string& name = config.axes[i].name;
        const double v = coords[i];
        if (name == "eta") {
            point.eta = v;
        } else if (name == "coupling_scale") {
            for (auto& vec : point.coupling)
                for (auto& amp : vec) amp *= v;
        } else {
            const std::size_t k = std::stoul(name.substr(5));
            point.alpha[k - 1] = v;
        }
    }
    return point.params();
}

PointReport evaluate_point(const SweepConfig& config, const std::vector<double>& coords) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row;
    row.coords = coords;
    json detail;
    json jcoords = json::object();
    for (std::size_t i = 0; i < config.axes.size(); ++i)
        jcoords[config.axes[i].name] = coords[i];
    detail["coords"] = jcoords;

    ModelParams params = apply_axes(config, coords);
    Cutoffs cut;
    cut.n_max = config.n_max;
    cut.solver = solver_options(config);

    for (CheckKind kind : all_checks()) {
        CheckStatus st{check_name(kind), "off", ""};
        if (requested(config, kind)) {
            st.status = "ok";
            try {
                switch (kind) {
                    case CheckKind::decompose: {
                        FockBasis basis(static_cast<int>(params.modes.size()), config.n_max);
                        Decomposition dec = decompose(build_bundle(params, basis));
                        row.offblock = dec.offblock_norm;
                        detail["decompose"] = {{"offblock", dec.offblock_norm},
                                               {"block_defect", dec.block_defect}};
                        break;
                    }
                    case CheckKind::ground: {
                        GroundStateReport g = ground_state_analysis(params, cut);
                        row.e_full = g.e_full;
                        row.e_minus = g.e_minus;
                        row.e_plus = g.e_plus;
                        row.gap = g.gap;
                        row.degeneracy = g.degeneracy;
                        row.leakage = g.leakage;
                        row.excited_flag = g.excited_state_flag ? 1 : 0;
                        detail["ground"] = {{"e_full", g.e_full},
                                            {"e_minus", g.e_minus},
                                            {"e_plus", g.e_plus},
                                            {"gap", g.gap},
                                            {"degeneracy", g.degeneracy},
                                            {"ground_block", g.ground_block},
                                            {"leakage", g.leakage},
                                            {"excited_state_flag", g.excited_state_flag},
                                            {"m", g.m},
                                            {"m_ess", g.m_ess}};
                        const double tol = 10.0 * cut.solver.tol * (1.0 + std::abs(g.e_full));
                        const bool ordered =
                            std::abs(g.e_full - std::min(g.e_minus, g.e_plus)) <= tol &&
                            g.e_plus - g.e_minus >= -tol &&
                            g.e_plus - g.e_minus <= 2.0 * std::abs(params.eta) + tol;
                        if (!ordered) {
                            st.status = "fail";
                            st.reason = "ordering";
                        }
                        break;
                    }
                    case CheckKind::excited: {
                        if (params.eta == 0.0) {
                            st.status = "skip";
                            st.reason = "eta-zero";
                            break;
                        }
                        ExcitedStateCheck ec = excited_state_check(params, cut);
                        detail["excited"] = {{"flag", ec.flag},
                                             {"e_plus", ec.e_plus},
                                             {"window_lo", ec.window_lo},
                                             {"window_hi", ec.window_hi},
                                             {"in_window", ec.in_window}};
                        if (!ec.flag) {
                            st.status = "skip";
                            st.reason = "criterion-off";
                        } else if (!ec.in_window) {
                            st.status = "fail";
                            st.reason = "window";
                        }
                        break;
                    }
                    case CheckKind::hvz: {
                        ThresholdReport tr;
                        try {
                            tr = hvz_threshold_diagnostic(params, cut);
                        } catch (const ModelError&) {
                            st.status = "skip";
                            st.reason = "no-essential-modes";
                            break;
                        }
                        json entries = json::array();
                        bool all_pass = true;
                        for (const auto& e : tr.entries) {
                            entries.push_back({{"mode", e.mode},
                                               {"quanta", e.quanta},
                                               {"predicted", e.predicted},
                                               {"matched_distance", e.matched_distance},
                                               {"pass", e.pass}});
                            all_pass = all_pass && e.pass;
                        }
                        detail["hvz"] = {{"threshold", tr.threshold}, {"entries", entries}};
                        if (tr.entries.empty()) {
                            st.status = "skip";
                            st.reason = "no-decoupled-modes";
                        } else if (!all_pass) {
                            st.status = "fail";
                            st.reason = "threshold-miss";
                        }
                        break;
                    }
                    case CheckKind::pullthrough: {
                        PullThroughReport pt = pull_through_residual(params, cut, 1);
                        row.pullthrough_rel = pt.relative;
                        detail["pullthrough"] = {{"relative", pt.relative},
                                                 {"aggregate", pt.aggregate},
                                                 {"mode_residual", pt.mode_residual},
                                                 {"rhs_norm", pt.rhs_norm},
                                                 {"mean_n", pt.mean_n},
                                                 {"mean_n2", pt.mean_n2},
                                                 {"ground_energy", pt.ground_energy},
                                                 {"cg_iterations", pt.cg_iterations}};
                        if (!std::isnan(config.pullthrough_tol) &&
                            pt.relative > config.pullthrough_tol) {
                            st.status = "fail";
                            st.reason = "residual";
                        }
                        break;
                    }
                    case CheckKind::convergence: {
                        if (config.schedule.empty()) {
                            st.status = "skip";
                            st.reason = "no-schedule";
                            break;
                        }
                        ConvergenceTable ct =
                            convergence_study(params, config.schedule, cut.solver);
                        json rows = json::array();
                        for (const auto& r : ct.rows)
                            rows.push_back({{"n_max", r.n_max},
                                            {"e_minus", r.e_minus},
                                            {"e_plus", r.e_plus},
                                            {"diff_minus", r.diff_minus},
                                            {"diff_plus", r.diff_plus},
                                            {"boundary_weight", r.boundary_weight}});
                        detail["convergence"] = {{"rows", rows}, {"non_cauchy", ct.non_cauchy}};
                        if (ct.non_cauchy) {
                            st.status = "fail";
                            st.reason = "non-cauchy";
                        }
                        break;
                    }
                }
            } catch (const Error& e) {
                st.status = "fail";
                st.reason = "error";
                detail[st.name]["error"] = e.what();
            }
        }
        row.checks.push_back(st);
    }

    const auto t1 = std::chrono::steady_clock::now();
    row.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    detail["timing_ms"] = row.timing_ms;
    json statuses = json::array();
    for (const auto& st : row.checks)
        statuses.push_back({{"name", st.name}, {"status", st.status}, {"reason", st.reason}});
    detail["checks"] = statuses;
    return {std::move(row), detail.dump()};
}

int resolve_workers(const SweepConfig& config, int cli_override) {
    if (cli_override > 0) return cli_override;
    if (const char* env = std::getenv("SBL_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ConfigError("SBL_WORKERS must be a positive integer");
        return static_cast<int>(v);
    }
    if (config.workers > 0) return config.workers;
    return 1;
}

SweepOutcome run_sweep(const SweepConfig& config, const std::string& out_dir,
                       int workers_override) {
    if (config.axes.empty())
        throw ConfigError("sweep needs at least one [sweep] axis");
    const std::vector<std::vector<double>> points = grid_points(config);
    const int workers =
        std::min<int>(resolve_workers(config, workers_override),
                      static_cast<int>(points.size()));

    std::vector<PointReport> results(points.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            results[i] = evaluate_point(config, points[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t]() {
                try {
                    for (std::size_t i = next++; i < points.size(); i = next++)
                        results[i] = evaluate_point(config, points[i]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::ostringstream columns;
    for (const auto& ax : config.axes) columns << ax.name << ",";
    columns << "e_full,e_minus,e_plus,gap,degeneracy,excited_flag,offblock,leakage,"
               "pullthrough_rel";
    for (CheckKind k : all_checks()) columns << ",check_" << check_name(k);

    std::ostringstream csv;
    csv << "# label: " << config.label << "\n";
    csv << "# seed: " << config.seed << "\n";
    csv << "# columns: " << columns.str() << "\n";
    csv << "# numbers: scientific, 17 significant digits; nan or -1 marks a value the "
           "requested checks did not produce\n";
    csv << columns.str() << "\n";
    for (const auto& pr : results) {
        const ResultRow& r = pr.row;
        for (double c : r.coords) csv << fmt(c) << ",";
        csv << fmt(r.e_full) << "," << fmt(r.e_minus) << "," << fmt(r.e_plus) << ","
            << fmt(r.gap) << "," << r.degeneracy << "," << r.excited_flag << ","
            << fmt(r.offblock) << "," << fmt(r.leakage) << "," << fmt(r.pullthrough_rel);
        for (const auto& st : r.checks) csv << "," << st.status;
        csv << "\n";
    }

    json sidecar;
    sidecar["label"] = config.label;
    sidecar["seed"] = config.seed;
    sidecar["n_max"] = config.n_max;
    json jaxes = json::array();
    for (const auto& ax : config.axes)
        jaxes.push_back({{"name", ax.name}, {"values", ax.values}});
    sidecar["axes"] = jaxes;
    json jrows = json::array();
    for (const auto& pr : results) jrows.push_back(json::parse(pr.json));
    sidecar["rows"] = jrows;

    fs::create_directories(out_dir);
    SweepOutcome outcome;
    outcome.csv_path = (fs::path(out_dir) / "sweep.csv").string();
    outcome.json_path = (fs::path(out_dir) / "sweep.json").string();
    outcome.rows = results.size();
    write_atomic(outcome.csv_path, csv.str());
    write_atomic(outcome.json_path, sidecar.dump(2) + "\n");
    for (const auto& pr : results)
        outcome.any_failure = outcome.any_failure || pr.row.any_failure();
    return outcome;
}

void emit_figure_data(const SweepConfig& config, const std::string& out_path) {
    if (config.axes.size() != 1 || config.axes[0].name != "eta")
        throw ConfigError("figure output needs the config to sweep exactly the eta axis");

    EigensolveOptions opts = solver_options(config);
    std::ostringstream out;
    out << "# label: " << config.label << "\n";
    out << "# columns: eta,e_minus,e_plus,threshold\n";
    out << "# threshold is e_minus + m_ess, the essential edge above the ground level\n";
    out << "eta,e_minus,e_plus,threshold\n";
    for (double eta : config.axes[0].values) {
        ModelParams p = apply_axes(config, {eta});
        FockBasis basis(static_cast<int>(p.modes.size()), config.n_max);
        const int sign_minus = eta >= 0 ? -1 : +1;  // parity coefficient -|eta|
        const double e_minus =
            eigensolve(build_fiber(p, basis, sign_minus), 1, opts).eigenvalues.front();
        const double e_plus =
            eigensolve(build_fiber(p, basis, -sign_minus), 1, opts).eigenvalues.front();
        const double m_ess = masses(p.modes).m_ess;
        out << fmt(eta) << "," << fmt(e_minus) << "," << fmt(e_plus) << ","
            << fmt(e_minus + m_ess) << "\n";
    }
    write_atomic(out_path, out.str());
}

bool emit_convergence(const SweepConfig& config, const std::string& out_path) {
    if (config.schedule.empty())
        throw ConfigError("convergence output needs a [schedule] section");
    ConvergenceTable table =
        convergence_study(config.params(), config.schedule, solver_options(config));

    std::ostringstream out;
    out << "# label: " << config.label << "\n";
    out << "# columns: n_max,e_minus,diff_minus,e_plus,diff_plus,boundary_weight\n";
    out << "# non_cauchy: " << (table.non_cauchy ? 1 : 0) << "\n";
    out << "n_max,e_minus,diff_minus,e_plus,diff_plus,boundary_weight\n";
    for (const auto& r : table.rows) {
        out << r.n_max << "," << fmt(r.e_minus) << "," << fmt(r.diff_minus) << ","
            << fmt(r.e_plus) << "," << fmt(r.diff_plus) << "," << fmt(r.boundary_weight)
            << "\n";
    }
    write_atomic(out_path, out.str());
    return !table.non_cauchy;
}

}  // namespace sbl
