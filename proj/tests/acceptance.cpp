// End-to-end gate for the library: twelve independent checks covering the
// block decomposition, spectral structure, certified bounds, the solvable
// linear model, pull-through residuals, solver agreement, and sweep
// determinism. Prints one verdict line per check; exits nonzero when any
// check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "sbl/config.hpp"
#include "sbl/fock.hpp"
#include "sbl/model.hpp"
#include "sbl/pullthrough.hpp"
#include "sbl/spectra.hpp"
#include "sbl/sweep.hpp"
#include "support.hpp"

using namespace sbl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

std::vector<double> dense_spectrum(const SparseOp& op) {
    EigensolveOptions opt;
    opt.method = EigensolveOptions::Method::dense;
    return eigensolve(op, static_cast<int>(op.dim()), opt).eigenvalues;
}

double sorted_match_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// 1. Conjugating the full Hamiltonian by the spin-parity unitary must leave
// nothing off the diagonal blocks, and the blocks must equal the fibers.
Outcome block_diagonalization_exact() {
    std::mt19937_64 rng(0xACC001);
    std::uniform_int_distribution<int> cutoff_dist(2, 8);
    double worst = 0;
    for (int trial = 0; trial < 25; ++trial) {
        ModelParams params = support::random_instance(rng);
        FockBasis basis(static_cast<int>(params.modes.size()), cutoff_dist(rng));
        Decomposition dec = decompose(build_bundle(params, basis));
        worst = std::max({worst, dec.offblock_norm, dec.block_defect});
    }
    return {worst <= 1e-13, "25 instances, worst block deviation " + sci(worst)};
}

// 2. The eigenvalue multiset of the full Hamiltonian is the union of the two
// fiber multisets.
Outcome spectrum_union() {
    std::vector<ModelParams> instances;
    std::vector<int> cutoffs;

    instances.push_back(support::quartic_instance());
    cutoffs.push_back(6);

    {
        ModeSet modes({Mode{1.1, 0.8, ModeTag::essential}}, "deep-quartic");
        CouplingFamily coupling(support::rows({{0.3}, {0.25}, {0.3}, {0.3}}));
        instances.push_back(ModelParams{0.25, {0.2, 0.1, 0.05, 0.12}, coupling, modes});
        cutoffs.push_back(40);
    }
    {
        ModeSet modes({Mode{1.0, 1.0, ModeTag::discrete}, Mode{1.45, 0.7, ModeTag::essential}},
                      "deep-linear");
        CouplingFamily coupling(support::rows({{0.35, 0.2}, {0.0, 0.0}}));
        instances.push_back(ModelParams{-0.2, {0.3, 0.0}, coupling, modes});
        cutoffs.push_back(40);
    }
    {
        ModeSet modes({Mode{0.9, 1.0, ModeTag::discrete}, Mode{1.2, 0.6, ModeTag::essential},
                       Mode{1.6, 1.1, ModeTag::discrete}},
                      "three-mode");
        CouplingFamily coupling(
            support::rows({{0.3, -0.2, 0.15}, {0.0, 0.0, 0.0}}));
        instances.push_back(ModelParams{0.4, {0.25, 0.0}, coupling, modes});
        cutoffs.push_back(8);
    }

    double worst = 0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const ModelParams& params = instances[i];
        FockBasis basis(static_cast<int>(params.modes.size()), cutoffs[i]);
        SpinFockBasis spin(basis);
        largest = std::max(largest, spin.dim());
        std::vector<double> full = dense_spectrum(build_full(params, spin));
        std::vector<double> fibers = dense_spectrum(build_fiber(params, basis, +1));
        std::vector<double> minus = dense_spectrum(build_fiber(params, basis, -1));
        fibers.insert(fibers.end(), minus.begin(), minus.end());
        worst = std::max(worst, sorted_match_distance(full, fibers));
    }
    return {worst <= 1e-10, "4 instances up to dimension " + std::to_string(largest) +
                                ", worst matched distance " + sci(worst)};
}

// 3. Nondegenerate ground state confined to one parity block away from
// eta = 0; exact doubling at eta = 0.
Outcome ground_multiplicity() {
    Cutoffs cut;
    cut.n_max = 6;
    double worst_leakage = 0;
    for (double eta : {0.2, -0.2, 0.5, -0.5}) {
        ModelParams params = support::quartic_instance();
        params.eta = eta;
        GroundStateReport g = ground_state_analysis(params, cut);
        if (g.degeneracy != 1)
            return {false, "degeneracy " + std::to_string(g.degeneracy) +
                               " at eta " + sci(eta)};
        worst_leakage = std::max(worst_leakage, g.leakage);
    }
    ModelParams params = support::quartic_instance();
    params.eta = 0.0;
    GroundStateReport g = ground_state_analysis(params, cut);
    if (g.degeneracy != 2)
        return {false, "degeneracy " + std::to_string(g.degeneracy) + " at eta 0"};
    return {worst_leakage <= 1e-10,
            "block leakage at most " + sci(worst_leakage) + ", doubling at eta 0"};
}

// 4. Fiber ground energies are ordered, split by at most 2|eta|, and split
// strictly when the splitting has room to survive.
Outcome level_ordering() {
    std::mt19937_64 rng(0xACC004);
    std::uniform_int_distribution<int> cutoff_dist(2, 6);
    Cutoffs cut;
    double tightest = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 25; ++trial) {
        ModelParams params = support::random_instance(rng);
        cut.n_max = cutoff_dist(rng);
        GroundStateReport g = ground_state_analysis(params, cut);
        const double slack = 1e-9 * (1.0 + std::abs(g.e_full));
        const double split = g.e_plus - g.e_minus;
        if (split < -slack)
            return {false, "fiber order inverted by " + sci(-split)};
        if (split > 2.0 * std::abs(params.eta) + slack)
            return {false, "splitting " + sci(split) + " above 2|eta| " +
                               sci(2.0 * std::abs(params.eta))};
        if (g.m >= 0.5 && std::abs(params.eta) >= 0.1) {
            if (split <= 10.0 * cut.solver.tol)
                return {false, "splitting " + sci(split) + " not strict at eta " +
                                   sci(params.eta)};
            tightest = std::min(tightest, split);
        }
    }
    return {true, "25 instances ordered, tightest strict splitting " + sci(tightest)};
}

// 5. With unit essential mass, the upper fiber energy sits inside the window
// above the ground energy whenever 2|eta| stays below the mass.
Outcome excited_window() {
    ModeSet modes({Mode{1.0, 1.0, ModeTag::essential}}, "window");
    CouplingFamily coupling(support::rows({{0.6}, {0.6}}));
    Cutoffs cut;
    cut.n_max = 12;
    double least_margin = std::numeric_limits<double>::infinity();
    int points = 0;
    for (double eta : {0.05, -0.05, 0.15, 0.25, -0.25, 0.35, -0.35, 0.45, -0.45}) {
        ModelParams params{eta, {0.3, 0.1}, coupling, modes};
        ExcitedStateCheck ec = excited_state_check(params, cut);
        if (!ec.flag) return {false, "criterion off at eta " + sci(eta)};
        if (!ec.in_window)
            return {false, "upper level " + sci(ec.e_plus) + " outside (" +
                               sci(ec.window_lo) + ", " + sci(ec.window_hi) + "] at eta " +
                               sci(eta)};
        least_margin = std::min(least_margin, ec.window_hi - ec.e_plus);
        ++points;
    }
    return {true, std::to_string(points) + " eta points in window, least headroom " +
                      sci(least_margin)};
}

// 6. A mode all couplings miss contributes combinatorially: the fiber
// spectrum equals sector-shifted copies of the reduced fiber spectrum.
Outcome decoupling_identity() {
    ModelParams params = support::decoupled_instance();
    const int n_max = 6;
    std::vector<double> assembled = decoupled_spectrum(params, {0}, n_max, n_max);
    FockBasis basis(2, n_max);
    std::vector<double> direct = dense_spectrum(build_fiber(params, basis, +1));
    const double worst = sorted_match_distance(assembled, direct);
    return {worst <= 1e-10, std::to_string(direct.size()) +
                                " levels, worst matched distance " + sci(worst)};
}

// 7. Certified lower bounds hold at every truncation: the field bound for
// dGamma(omega) + phi(g) and the polynomial bound for the interaction sum.
Outcome lower_bounds() {
    std::mt19937_64 rng(0xACC007);
    std::uniform_real_distribution<double> re_dist(-0.6, 0.6);
    EigensolveOptions dense;
    dense.method = EigensolveOptions::Method::dense;

    double least_room = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams params = support::random_instance(rng);
        const int mode_count = static_cast<int>(params.modes.size());

        std::vector<Complex> g;
        double field_bound = 0;
        for (int k = 0; k < mode_count; ++k) {
            g.emplace_back(re_dist(rng), re_dist(rng));
            const Mode& mode = params.modes.mode(k);
            field_bound -= std::norm(g.back()) * mode.weight / mode.energy;
        }

        const std::set<int> leading = leading_terms(params.coupling);
        const double poly_bound = interaction_lower_bound(params.alpha, leading);

        for (int n = 1; n <= 6; ++n) {
            FockBasis basis(mode_count, n);
            SparseOp h_field =
                dgamma(basis, params.modes.energies()) + field(basis, g, params.modes);
            const double field_min = eigensolve(h_field, 1, dense).eigenvalues[0];
            if (field_min < field_bound - 1e-10)
                return {false, "field bound broken by " + sci(field_bound - field_min)};
            least_room = std::min(least_room, field_min - field_bound);

            std::optional<SparseOp> interaction;
            for (int j = 2; j <= static_cast<int>(params.coupling.count()); ++j) {
                if (params.alpha[j - 1] == 0.0) continue;
                SparseOp term =
                    field_power(basis, params.coupling.vec(j), params.modes, j)
                        .scaled(params.alpha[j - 1]);
                interaction = interaction ? *interaction + term : term;
            }
            if (!interaction) continue;
            const double poly_min = eigensolve(*interaction, 1, dense).eigenvalues[0];
            if (poly_min < poly_bound - 1e-10)
                return {false, "interaction bound broken by " + sci(poly_bound - poly_min)};
            least_room = std::min(least_room, poly_min - poly_bound);
        }
    }
    return {true, "50 instances, 6 truncations each, least slack " + sci(least_room)};
}

std::optional<PullThroughReport> solvable_report;

// 8. The linear single-mode model has a closed-form ground state: energy
// -alpha_1^2 and mean occupation alpha_1^2 at this dispersion.
Outcome solvable_model() {
    Cutoffs cut;
    cut.n_max = 20;
    solvable_report = pull_through_residual(support::van_hove_instance(), cut, 1);
    const double energy_err = std::abs(solvable_report->ground_energy + 0.16);
    const double occupation_err = std::abs(solvable_report->mean_n - 0.16);
    const bool pass = energy_err <= 1e-8 && occupation_err <= 1e-6;
    return {pass, "energy error " + sci(energy_err) + ", occupation error " +
                      sci(occupation_err)};
}

// 9. Pull-through residuals: tiny for the solvable model, and shrinking to
// below 1e-6 along the cutoff ladder for the quartic instance.
Outcome pull_through() {
    Cutoffs cut;
    if (!solvable_report) {
        cut.n_max = 20;
        solvable_report = pull_through_residual(support::van_hove_instance(), cut, 1);
    }
    if (solvable_report->relative > 1e-8)
        return {false, "solvable-model residual " + sci(solvable_report->relative)};

    std::vector<double> ladder;
    for (int n : {6, 8, 10, 12}) {
        cut.n_max = n;
        ladder.push_back(pull_through_residual(support::cutoff_instance(), cut).relative);
    }
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] >= ladder[i - 1])
            return {false, "residual not decreasing: " + sci(ladder[i - 1]) + " then " +
                               sci(ladder[i])};
    const bool pass = ladder.back() <= 1e-6;
    return {pass, "solvable residual " + sci(solvable_report->relative) +
                      ", quartic ladder ends at " + sci(ladder.back())};
}

// 10. Mode-resolved annihilation satisfies the occupation and quadratic-form
// identities on arbitrary states.
Outcome form_identities() {
    ModelParams params = support::quartic_instance();
    FockBasis basis(2, 6);
    SparseOp number = dgamma(basis, {1.0, 1.0});

    std::mt19937_64 rng(0xACC010);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> b_dist(0.1, 2.0);

    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        FockVector psi(basis.dim());
        for (Eigen::Index i = 0; i < psi.size(); ++i)
            psi[i] = Complex(normal(rng), normal(rng));
        psi.normalize();

        auto slices = pointwise_annihilation1(basis, params.modes, psi);
        double sum = 0;
        for (std::size_t k = 0; k < slices.size(); ++k)
            sum += params.modes.mode(static_cast<int>(k)).weight * slices[k].squaredNorm();
        const double expected = psi.dot(number.apply(psi)).real();
        worst = std::max(worst, std::abs(sum - expected));

        std::vector<double> b{b_dist(rng), b_dist(rng)};
        worst = std::max(worst, dgamma_form_defect(basis, params.modes, b, psi));
    }
    return {worst <= 1e-12, "100 states, worst identity defect " + sci(worst)};
}

// 11. The Krylov path reproduces dense eigenvalues, and alone it resolves
// the bottom of a ~44000-dimensional fiber with small true residuals.
Outcome solver_cross_check() {
    EigensolveOptions dense;
    dense.method = EigensolveOptions::Method::dense;
    EigensolveOptions krylov;
    krylov.method = EigensolveOptions::Method::lanczos;
    krylov.budget_factor = 100;

    ModelParams medium = support::lanczos_instance();
    FockBasis medium_basis(2, 61);
    SparseOp medium_fiber = build_fiber(medium, medium_basis, -1);
    std::vector<double> reference = eigensolve(medium_fiber, 6, dense).eigenvalues;
    std::vector<double> krylov_vals = eigensolve(medium_fiber, 6, krylov).eigenvalues;
    double worst_rel = 0;
    for (int i = 0; i < 6; ++i)
        worst_rel = std::max(worst_rel, std::abs(krylov_vals[i] - reference[i]) /
                                            (1.0 + std::abs(reference[i])));
    if (worst_rel > 1e-9)
        return {false, "dense disagreement " + sci(worst_rel) + " at dimension " +
                           std::to_string(medium_basis.dim())};

    ModelParams wide = support::wide_instance();
    FockBasis wide_basis(8, 10);
    SpectralResult low = eigensolve(build_fiber(wide, wide_basis, -1), 3, krylov);
    double worst_residual = 0;
    for (double r : low.residuals) worst_residual = std::max(worst_residual, r);
    const bool pass = worst_residual <= 1e-8;
    return {pass, "dense agreement " + sci(worst_rel) + ", residual " +
                      sci(worst_residual) + " at dimension " +
                      std::to_string(wide_basis.dim())};
}

// 12. Sweeps are a pure function of config and seed: rerunning yields
// byte-identical CSV output.
Outcome sweep_determinism() {
    const std::string text =
        "label = determinism\n"
        "alpha = 0.3 0.0\n"
        "n_max = 5\n"
        "seed = 11\n"
        "checks = decompose ground\n"
        "[modes]\n"
        "1.0 1.0 essential\n"
        "[coupling 1]\n"
        "0.5\n"
        "[coupling 2]\n"
        "0.0\n"
        "[sweep eta]\n"
        "-0.3 0.0 0.25 0.4\n";
    SweepConfig config = parse_config_text(text, "acceptance.cfg");

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    const fs::path root =
        fs::temp_directory_path() / ("sbl-acceptance-" + std::to_string(::getpid()));
    const fs::path dir_a = root / "a";
    const fs::path dir_b = root / "b";
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);

    SweepOutcome first = run_sweep(config, dir_a.string(), 1);
    SweepOutcome second = run_sweep(config, dir_b.string(), 1);
    const std::string csv_a = slurp(first.csv_path);
    const std::string csv_b = slurp(second.csv_path);

    std::error_code ec;
    fs::remove_all(root, ec);

    if (first.rows != 4 || first.any_failure)
        return {false, "sweep did not complete cleanly"};
    if (csv_a.empty() || csv_a != csv_b)
        return {false, "rerun produced different bytes"};
    return {true, std::to_string(first.rows) + " rows, " +
                      std::to_string(csv_a.size()) + " bytes, reruns identical"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget_s;  // 0 = untimed
    };
    const std::vector<Criterion> criteria = {
        {"block diagonalization exact", block_diagonalization_exact, 10.0},
        {"spectrum union over fibers", spectrum_union, 60.0},
        {"ground multiplicity and leakage", ground_multiplicity, 0.0},
        {"level ordering and splitting", level_ordering, 0.0},
        {"excited level window", excited_window, 0.0},
        {"decoupling identity", decoupling_identity, 0.0},
        {"certified lower bounds", lower_bounds, 0.0},
        {"solvable model closed form", solvable_model, 0.0},
        {"pull-through residuals", pull_through, 0.0},
        {"annihilation form identities", form_identities, 0.0},
        {"solver cross-check", solver_cross_check, 300.0},
        {"sweep determinism", sweep_determinism, 0.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].budget_s > 0 && elapsed > criteria[i].budget_s) {
            outcome.pass = false;
            outcome.detail += "; over time budget " +
                              std::to_string(static_cast<int>(criteria[i].budget_s)) + " s";
        }
        if (!outcome.pass) ++failures;

        std::ostringstream line;
        line << "criterion " << (i + 1) << ": " << (outcome.pass ? "PASS" : "FAIL") << " ("
             << criteria[i].name << ": " << outcome.detail << "; " << std::fixed
             << std::setprecision(2) << elapsed << " s)";
        std::cout << line.str() << std::endl;
    }

    std::cout << "acceptance: " << (criteria.size() - failures) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
