#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sbl/model.hpp"
#include "sbl/sparse.hpp"

namespace sbl {

struct EigensolveOptions {
    enum class Method { automatic, dense, lanczos };

    Method method = Method::automatic;
    std::size_t dense_threshold = 800;
    double tol = 1e-10;
    std::uint64_t seed = 0x5b197ae3u;
    int budget_factor = 50;  // iteration budget is budget_factor * count
    bool shift_invert = false;
    std::size_t shift_invert_dim_limit = 6000;
};

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<Vector> eigenvectors;
    std::vector<double> residuals;  // |H v - lambda v|
    int requested = 0;
    int iterations = 0;  // 0 for the dense path
    double tolerance = 0;
    std::string method;
};

// Lowest eigenpairs of a hermitian operator: dense below the dimension
// threshold, Lanczos with full reorthogonalization and a seeded start vector
// above it. Deterministic for fixed options.
SpectralResult eigensolve(const SparseOp& op, int count, const EigensolveOptions& options);
SpectralResult eigensolve(const SparseOp& op, int count, double tol);

// Number of eigenvalues within tol*(1+|lowest|) of the lowest.
int ground_degeneracy(const std::vector<double>& eigenvalues, double tol = 1e-9);

// Certified lower bound n*C0 for the interaction sum over powers j >= 2,
// where C0 is the least global minimum over the finite family of real
// polynomials with the even leading power and any subset of the lower
// coefficients. Nonpositive by construction; zero when no even power has a
// positive coefficient.
double interaction_lower_bound(const std::vector<double>& alpha, const std::set<int>& leading);

struct Cutoffs {
    int n_max = 6;
    EigensolveOptions solver;
};

struct GroundStateReport {
    double e_full = 0;   // ground energy of the full Hamiltonian
    double e_minus = 0;  // ground of the fiber with parity coefficient -|eta|
    double e_plus = 0;   // ground of the fiber with parity coefficient +|eta|
    double gap = 0;      // distance from e_full to the next full-space level
    int degeneracy = 1;
    int ground_block = 0;  // 0 = e_up, 1 = e_down after the parity transform
    double leakage = 0;    // ground-state mass in the opposite block
    bool excited_state_flag = false;
    double m = 0;
    double m_ess = 0;
};

GroundStateReport ground_state_analysis(const ModelParams& params, const Cutoffs& cutoffs);

struct ExcitedStateCheck {
    bool flag = false;  // criterion 2|eta| < m_ess holds
    double e_plus = 0;
    double window_lo = 0;  // exclusive
    double window_hi = 0;  // inclusive
    bool in_window = false;
};

ExcitedStateCheck excited_state_check(const ModelParams& params, const Cutoffs& cutoffs);

struct ThresholdEntry {
    int mode = 0;
    int quanta = 0;
    double predicted = 0;
    double matched_distance = 0;
    bool pass = false;
};

struct ThresholdReport {
    double threshold = 0;  // e_full + m_ess
    std::vector<ThresholdEntry> entries;
};

// Finite-truncation shadow of the essential-spectrum threshold: for every
// essential mode on which all couplings vanish, the reduced-fiber ground
// energy plus q quanta of that mode must reappear in the plus-fiber
// spectrum.
ThresholdReport hvz_threshold_diagnostic(const ModelParams& params, const Cutoffs& cutoffs);

struct ConvergenceRow {
    int n_max = 0;
    double e_minus = 0;
    double e_plus = 0;
    double diff_minus = 0;  // change from the previous row, nan on the first
    double diff_plus = 0;
    double boundary_weight = 0;  // minus-fiber ground mass in the top two grades
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    bool non_cauchy = false;
};

ConvergenceTable convergence_study(const ModelParams& params, const std::vector<int>& schedule,
                                   const EigensolveOptions& options = {});

}  // namespace sbl
