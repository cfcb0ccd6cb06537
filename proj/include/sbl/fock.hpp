#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "sbl/onebody.hpp"
#include "sbl/sparse.hpp"

namespace sbl {

// Occupation-number basis of the boson space truncated at total occupation
// n_max. States are ordered by grade |n| and lexicographically inside each
// grade, the vacuum first; the dimension is binomial(m + n_max, m).
class FockBasis {
public:
    static constexpr std::size_t default_capacity = 2'000'000;

    FockBasis(int mode_count, int n_max, std::size_t capacity = default_capacity);

    int mode_count() const { return m_; }
    int cutoff() const { return n_max_; }
    std::size_t dim() const { return totals_.size(); }

    int occupation(std::size_t state, int k) const { return occ_[state * m_ + k]; }
    int total(std::size_t state) const { return totals_[state]; }
    const int* state(std::size_t idx) const { return occ_.data() + idx * m_; }

    std::size_t index_of(const std::vector<int>& occ) const;
    // Index of the state with one quantum removed from mode k; the source
    // state must have occupation there.
    std::size_t lowered(std::size_t state, int k) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };

    int m_ = 0;
    int n_max_ = 0;
    std::vector<int> occ_;
    std::vector<int> totals_;
    std::unordered_map<std::vector<int>, std::size_t, KeyHash> index_;
};

using FockVector = Vector;

std::size_t fock_dimension(int mode_count, int n_max, std::size_t capacity);

// Single-mode annihilator: <n - delta_k| a_k |n> = sqrt(n_k).
SparseOp mode_annihilator(const FockBasis& basis, int k);

// Smeared annihilation a(g) = sum_k conj(g_k sqrt(w_k)) a_k; quadrature
// weights live inside the amplitudes so Fock inner products are plain sums.
SparseOp annihilation(const FockBasis& basis, const std::vector<Complex>& g,
                      const ModeSet& modes);
SparseOp creation(const FockBasis& basis, const std::vector<Complex>& g,
                  const ModeSet& modes);

// Field operator a(g) + a'(g).
SparseOp field(const FockBasis& basis, const std::vector<Complex>& g,
               const ModeSet& modes);

// i-th matrix power of the truncated field operator. Powers of the
// compression, not compressions of powers: this is the defining choice of
// the truncated model and keeps the block-decomposition identity exact.
SparseOp field_power(const FockBasis& basis, const std::vector<Complex>& g,
                     const ModeSet& modes, int i);

// Second quantization of a multiplication operator: diagonal sum_k n_k b_k.
SparseOp dgamma(const FockBasis& basis, const std::vector<double>& b);

// Parity operator, diagonal (-1)^{|n|}.
SparseOp gamma_parity(const FockBasis& basis);

// Exponential vector: coefficient prod_k c_k^{n_k} / sqrt(n_k!) with
// c_k = g_k sqrt(w_k); not normalized.
FockVector exponential_vector(const FockBasis& basis, const std::vector<Complex>& g,
                              const ModeSet& modes);

// Weyl operator exp(a'(h) - a(h)), computed through the eigendecomposition
// of the hermitian generator; unitary up to roundoff.
SparseOp weyl(const FockBasis& basis, const std::vector<Complex>& h,
              const ModeSet& modes);

// Mode-resolved annihilation (A1 psi)(k) = a_k psi / sqrt(w_k), normalized
// so that sum_k w_k |(A1 psi)(k)|^2 = <psi, N psi>.
std::vector<FockVector> pointwise_annihilation1(const FockBasis& basis,
                                                const ModeSet& modes,
                                                const FockVector& psi);

// Second order: (A2 psi)(k,q) = a_k a_q psi / sqrt(w_k w_q), symmetric in
// (k,q); only the upper triangle k <= q is stored.
class PointwiseSecond {
public:
    PointwiseSecond(int mode_count, Eigen::Index dim);

    int mode_count() const { return m_; }
    FockVector& at(int k, int q);
    const FockVector& at(int k, int q) const;

private:
    std::size_t slot(int k, int q) const;
    int m_ = 0;
    std::vector<FockVector> tri_;
};

PointwiseSecond pointwise_annihilation2(const FockBasis& basis, const ModeSet& modes,
                                        const FockVector& psi);

}  // namespace sbl
