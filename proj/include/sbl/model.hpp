#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sbl/fock.hpp"
#include "sbl/onebody.hpp"
#include "sbl/sparse.hpp"

namespace sbl {

// Spin tensor Fock basis with spin dimension 2, ordered (e_up, e_down) so
// that sigma_z = diag(+1, -1); composite indices are spin-major.
class SpinFockBasis {
public:
    explicit SpinFockBasis(const FockBasis& fock) : fock_(&fock) {}

    const FockBasis& fock() const { return *fock_; }
    std::size_t dim() const { return 2 * fock_->dim(); }
    std::size_t index(int spin, std::size_t state) const {
        return static_cast<std::size_t>(spin) * fock_->dim() + state;
    }

private:
    const FockBasis* fock_;
};

// Fiber operator sign*eta*parity + dGamma(omega) + sum_i alpha_i field(f_i)^i
// on the Fock space. Requires the first structural hypothesis.
SparseOp build_fiber(const ModelParams& params, const FockBasis& basis, int sign);

// Full Hamiltonian eta sigma_z (x) 1 + 1 (x) dGamma(omega)
// + sum_i alpha_i (sigma_x (x) field(f_i))^i on spin (x) Fock, with the i-th
// power expanded as sigma_x^(i mod 2) (x) field^i.
SparseOp build_full(const ModelParams& params, const SpinFockBasis& basis);

// Spin-parity involution: identity on even grades, spin swap on odd grades.
// Real, symmetric, and its own inverse.
SparseOp parity_unitary(const SpinFockBasis& basis);

struct OperatorBundle {
    SparseOp h_full;
    SparseOp f_plus;   // parity coefficient +eta
    SparseOp f_minus;  // parity coefficient -eta
    SparseOp u_parity;
    std::uint64_t params_hash = 0;
    int n_max = 0;
};

OperatorBundle build_bundle(const ModelParams& params, const FockBasis& basis);

struct Decomposition {
    double offblock_norm = 0;   // largest off-block entry of U H U*
    double block_defect = 0;    // largest entrywise gap to the built fibers
    SparseOp block_plus;
    SparseOp block_minus;
};

// Conjugates the full Hamiltonian by the spin-parity unitary and extracts
// the spin-diagonal blocks; under the graded truncation the result must
// equal diag(F_plus, F_minus) up to roundoff.
Decomposition decompose(const OperatorBundle& bundle);

// Spectrum of the plus fiber assembled combinatorially when the couplings
// vanish outside coupled_modes: every free-mode occupation with at most
// free_quanta_cap quanta contributes the spectrum of the fiber on the
// coupled modes alone, cutoff reduced accordingly, parity coefficient
// flipped per quantum, shifted by the free energy. Occupations whose free
// energy exceeds energy_ceiling are pruned. Sorted ascending.
std::vector<double> decoupled_spectrum(
    const ModelParams& params, const std::vector<int>& coupled_modes, int n_max,
    int free_quanta_cap,
    double energy_ceiling = std::numeric_limits<double>::infinity());

std::uint64_t params_hash(const ModelParams& params, int n_max);

}  // namespace sbl
