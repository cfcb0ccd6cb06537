#pragma once

#include <vector>

#include "sbl/fock.hpp"
#include "sbl/model.hpp"
#include "sbl/spectra.hpp"

namespace sbl {

struct PullThroughReport {
    std::vector<double> mode_residual;  // |(A1 psi)(k) - reconstructed(k)| per mode
    std::vector<double> rhs_norm;       // norm of the reconstructed side per mode
    double aggregate = 0;               // sqrt(sum_k w_k mode_residual_k^2)
    double relative = 0;                // aggregate over the same norm of A1 psi
    double mean_n = 0;                  // <psi, N psi>
    double mean_n2 = 0;                 // <psi, N^2 psi>
    double ground_energy = 0;
    int cg_iterations = 0;              // summed over all shifted solves
};

// First-order ground-state identity: for psi the ground state of the fiber
// with parity coefficient -|eta| and energy E,
//   (A1 psi)(k) = -(F_plus - E + omega_k)^{-1} sum_j j alpha_j f_j(k)
//                 field(f_j)^{j-1} psi.
// The shifted systems are positive definite because the plus fiber dominates
// E; they are solved by conjugate gradients, warm-started along each block of
// modes. At finite cutoff the identity is approximate and the residual must
// decrease along a cutoff schedule. max_threads caps the concurrent mode
// solves; pass 1 inside an already-parallel sweep.
PullThroughReport pull_through_residual(const ModelParams& params, const Cutoffs& cutoffs,
                                        int max_threads = 4);

struct PairResidual {
    int k = 0;
    int q = 0;  // k <= q
    double residual = 0;
    double rhs_norm = 0;
};

struct SecondOrderReport {
    std::vector<PairResidual> pairs;  // upper triangle, ordered by (k, q)
    double aggregate = 0;             // weights w_k w_q, off-diagonal pairs twice
    double relative = 0;
    double symmetry_defect = 0;  // largest |a_k A1(q) - a_q A1(k)| mismatch
    double ground_energy = 0;
    int cg_iterations = 0;
};

// Second-order identity: (A2 psi)(k,q) solves
//   (F_minus - E + omega_k + omega_q) x = -sum_j j alpha_j (f_j(k)
//   field^{j-1} (A1 psi)(q) + f_j(q) field^{j-1} (A1 psi)(k))
//   - sum_j j(j-1) alpha_j f_j(k) f_j(q) field^{j-2} psi,
// the right side symmetrized over the pair; the systems reuse the minus
// fiber, whose ground energy is E itself.
SecondOrderReport pull_through_second_order(const ModelParams& params, const Cutoffs& cutoffs);

struct MomentRow {
    int n_max = 0;
    std::vector<double> values;  // <psi, N^a psi> per requested exponent
};

struct MomentTable {
    std::vector<int> a_values;
    std::vector<MomentRow> rows;
    // Per exponent: the sequence keeps climbing at the end of the schedule
    // (strictly increasing throughout and the last increment still at least
    // half the largest one), which is the finite-cutoff signature of a
    // moment with no uniform bound.
    std::vector<bool> growth_flag;
};

MomentTable moment_stability(const ModelParams& params, const std::vector<int>& schedule,
                             const std::vector<int>& a_values,
                             const EigensolveOptions& options = {});

// Defect of the quadratic-form identity
//   <psi, dGamma(b) psi> = sum_k b_k w_k |(A1 psi)(k)|^2,
// which holds for every state, not only ground states.
double dgamma_form_defect(const FockBasis& basis, const ModeSet& modes,
                          const std::vector<double>& b, const FockVector& psi);

}  // namespace sbl
