#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sbl/config.hpp"
#include "sbl/fock.hpp"
#include "sbl/sweep.hpp"

namespace {

// Exit codes: 0 success, 1 usage or config error, 2 a check failed,
// 3 internal error.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailure = 2;
constexpr int kInternal = 3;

void print_validation(const sbl::SweepConfig& config) {
    const sbl::ModelParams params = config.params();
    const sbl::HypothesisReport report = sbl::validate_hypotheses(params);
    const std::size_t dim =
        sbl::fock_dimension(static_cast<int>(config.modes.size()), config.n_max,
                            sbl::FockBasis::default_capacity);

    std::cout << "label: " << config.label << "\n";
    std::cout << "modes: " << config.modes.size() << ", interaction order "
              << config.alpha.size() << ", n_max " << config.n_max << "\n";
    std::cout << "boson dimension: " << dim << " (composite " << 2 * dim << ")\n";
    std::cout << "leading terms:";
    for (int i : report.leading) std::cout << " " << i;
    std::cout << "\n";
    for (int i = 1; i <= 5; ++i) {
        const auto& st = report.check(i);
        std::cout << "hypothesis " << i << ": " << (st.pass ? "pass" : "fail");
        if (!st.reason.empty()) std::cout << " (" << st.reason << ")";
        std::cout << "\n";
    }
    std::cout << "checks:";
    for (sbl::CheckKind k : config.checks) std::cout << " " << sbl::check_name(k);
    std::cout << "\n";
    if (!config.axes.empty()) {
        std::cout << "axes:";
        for (const auto& ax : config.axes)
            std::cout << " " << ax.name << "(" << ax.values.size() << ")";
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated spin-boson laboratory"};
    app.require_subcommand(1);

    int workers = 0;
    app.add_option("--workers", workers,
                   "worker threads for sweeps (overrides SBL_WORKERS and the config)");

    std::string config_path;
    std::string out_path;

    CLI::App* validate =
        app.add_subcommand("validate", "parse a config and report the hypothesis checks");
    validate->add_option("config", config_path, "config file")->required();

    CLI::App* analyze =
        app.add_subcommand("analyze", "run the configured checks at the base point, JSON to stdout");
    analyze->add_option("config", config_path, "config file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate the whole sweep grid");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("-o,--output", out_path, "output directory");

    CLI::App* figure =
        app.add_subcommand("figure", "emit the eta-sweep level picture as plot data");
    figure->add_option("config", config_path, "config file")->required();
    figure->add_option("-o,--output", out_path, "output file")->required();

    CLI::App* convergence =
        app.add_subcommand("convergence", "emit the cutoff-refinement table");
    convergence->add_option("config", config_path, "config file")->required();
    convergence->add_option("-o,--output", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const sbl::SweepConfig config = sbl::load_config(config_path);

        if (validate->parsed()) {
            print_validation(config);
            return kOk;
        }
        if (analyze->parsed()) {
            std::vector<double> base_coords;
            for (const auto& ax : config.axes) base_coords.push_back(ax.values.front());
            sbl::PointReport report = sbl::evaluate_point(config, base_coords);
            std::cout << report.json << "\n";
            return report.row.any_failure() ? kCheckFailure : kOk;
        }
        if (sweep->parsed()) {
            std::string dir = out_path.empty() ? config.output : out_path;
            if (dir.empty())
                throw sbl::ConfigError(
                    "sweep needs an output directory (-o or the config's output key)");
            sbl::SweepOutcome outcome = sbl::run_sweep(config, dir, workers);
            std::cout << "wrote " << outcome.csv_path << " (" << outcome.rows << " rows)\n";
            std::cout << "wrote " << outcome.json_path << "\n";
            if (outcome.any_failure) {
                std::cout << "check failures present\n";
                return kCheckFailure;
            }
            return kOk;
        }
        if (figure->parsed()) {
            sbl::emit_figure_data(config, out_path);
            std::cout << "wrote " << out_path << "\n";
            return kOk;
        }
        if (convergence->parsed()) {
            const bool cauchy = sbl::emit_convergence(config, out_path);
            std::cout << "wrote " << out_path << "\n";
            if (!cauchy) {
                std::cout << "energy increments are not shrinking\n";
                return kCheckFailure;
            }
            return kOk;
        }
        return kUsage;
    } catch (const sbl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
