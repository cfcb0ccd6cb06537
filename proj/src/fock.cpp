#include "sbl/fock.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sbl {

std::size_t fock_dimension(int mode_count, int n_max, std::size_t capacity) {
    if (mode_count < 1) throw DimensionError("mode count must be at least 1");
    if (n_max < 0) throw DimensionError("cutoff must be nonnegative");
    // binomial(mode_count + n_max, mode_count), with overflow guarded by the
    // capacity limit at every partial product
    unsigned long long acc = 1;
    for (int j = 1; j <= mode_count; ++j) {
        acc = acc * (n_max + j) / j;  // exact: product of j consecutive integers
        if (acc > capacity)
            throw CapacityError("basis dimension exceeds capacity limit of " +
                                std::to_string(capacity));
    }
    return static_cast<std::size_t>(acc);
}

std::size_t FockBasis::KeyHash::operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

FockBasis::FockBasis(int mode_count, int n_max, std::size_t capacity)
    : m_(mode_count), n_max_(n_max) {
    const std::size_t d = fock_dimension(mode_count, n_max, capacity);
    occ_.reserve(d * m_);
    totals_.reserve(d);
    index_.reserve(d);

    std::vector<int> state(m_, 0);
    // grade by grade; inside a grade the first coordinate grows slowest,
    // giving plain lexicographic order on tuples
    for (int total = 0; total <= n_max_; ++total) {
        auto emit = [&](auto&& self, int pos, int remaining) -> void {
            if (pos == m_ - 1) {
                state[pos] = remaining;
                index_.emplace(state, totals_.size());
                occ_.insert(occ_.end(), state.begin(), state.end());
                totals_.push_back(total);
                return;
            }
            for (int c = 0; c <= remaining; ++c) {
                state[pos] = c;
                self(self, pos + 1, remaining - c);
            }
        };
        emit(emit, 0, total);
    }
}

std::size_t FockBasis::index_of(const std::vector<int>& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) throw DimensionError("occupation vector not in basis");
    return it->second;
}

std::size_t FockBasis::lowered(std::size_t state, int k) const {
    std::vector<int> occ(this->state(state), this->state(state) + m_);
    occ[k] -= 1;
    return index_of(occ);
}

SparseOp mode_annihilator(const FockBasis& basis, int k) {
    if (k < 0 || k >= basis.mode_count())
        throw DimensionError("mode index out of range");
    std::vector<Triplet> entries;
    entries.reserve(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        int nk = basis.occupation(s, k);
        if (nk == 0) continue;
        entries.emplace_back(static_cast<int>(basis.lowered(s, k)), static_cast<int>(s),
                             Complex(std::sqrt(double(nk)), 0));
    }
    return SparseOp(basis.dim(), entries, false);
}

namespace {

void check_amplitudes(const FockBasis& basis, const std::vector<Complex>& g,
                      const ModeSet& modes) {
    if (g.size() != modes.size() ||
        static_cast<std::size_t>(basis.mode_count()) != modes.size())
        throw DimensionError("amplitude vector, basis and mode set disagree on mode count");
}

}  // namespace

SparseOp annihilation(const FockBasis& basis, const std::vector<Complex>& g,
                      const ModeSet& modes) {
    check_amplitudes(basis, g, modes);
    std::vector<Triplet> entries;
    entries.reserve(basis.dim() * basis.mode_count());
    for (std::size_t s = 0; s < basis.dim(); ++s)
        for (int k = 0; k < basis.mode_count(); ++k) {
            int nk = basis.occupation(s, k);
            if (nk == 0) continue;
            Complex c = std::conj(g[k] * std::sqrt(modes.mode(k).weight));
            if (c == Complex(0, 0)) continue;
            entries.emplace_back(static_cast<int>(basis.lowered(s, k)),
                                 static_cast<int>(s), c * std::sqrt(double(nk)));
        }
    return SparseOp(basis.dim(), entries, false);
}

SparseOp creation(const FockBasis& basis, const std::vector<Complex>& g,
                  const ModeSet& modes) {
    return annihilation(basis, g, modes).adjoint();
}

SparseOp field(const FockBasis& basis, const std::vector<Complex>& g,
               const ModeSet& modes) {
    SparseOp a = annihilation(basis, g, modes);
    SparseMatrix dagger = a.matrix().adjoint();
    return SparseOp(SparseMatrix(a.matrix() + dagger), true);
}

SparseOp field_power(const FockBasis& basis, const std::vector<Complex>& g,
                     const ModeSet& modes, int i) {
    if (i < 1) throw PreconditionError("field power exponent must be at least 1");
    SparseOp phi = field(basis, g, modes);
    SparseMatrix acc = phi.matrix();
    for (int p = 1; p < i; ++p) acc = SparseMatrix(acc * phi.matrix());
    return SparseOp(std::move(acc), true);
}

SparseOp dgamma(const FockBasis& basis, const std::vector<double>& b) {
    if (b.size() != static_cast<std::size_t>(basis.mode_count()))
        throw DimensionError("dgamma needs one entry per mode");
    std::vector<Triplet> entries;
    entries.reserve(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        double v = 0;
        for (int k = 0; k < basis.mode_count(); ++k) v += basis.occupation(s, k) * b[k];
        entries.emplace_back(static_cast<int>(s), static_cast<int>(s), Complex(v, 0));
    }
    return SparseOp(basis.dim(), entries, true);
}

SparseOp gamma_parity(const FockBasis& basis) {
    std::vector<Triplet> entries;
    entries.reserve(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s)
        entries.emplace_back(static_cast<int>(s), static_cast<int>(s),
                             Complex(basis.total(s) % 2 == 0 ? 1 : -1, 0));
    return SparseOp(basis.dim(), entries, true);
}

FockVector exponential_vector(const FockBasis& basis, const std::vector<Complex>& g,
                              const ModeSet& modes) {
    check_amplitudes(basis, g, modes);
    std::vector<Complex> c(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        c[k] = g[k] * std::sqrt(modes.mode(k).weight);
    FockVector out(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        Complex v = 1;
        for (int k = 0; k < basis.mode_count(); ++k) {
            int nk = basis.occupation(s, k);
            for (int p = 1; p <= nk; ++p) v *= c[k] / std::sqrt(double(p));
        }
        out[s] = v;
    }
    return out;
}

SparseOp weyl(const FockBasis& basis, const std::vector<Complex>& h,
              const ModeSet& modes) {
    check_amplitudes(basis, h, modes);
    SparseOp a = annihilation(basis, h, modes);
    // generator a'(h) - a(h) is antihermitian; diagonalize -i times it
    Eigen::MatrixXcd s = Eigen::MatrixXcd(a.matrix()) * Complex(0, 1);
    s += s.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index j = 0; j < phases.size(); ++j)
        phases[j] = std::exp(Complex(0, es.eigenvalues()[j]));
    Eigen::MatrixXcd wmat =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return SparseOp(SparseMatrix(wmat.sparseView(0.0, 0.0)), false);
}

std::vector<FockVector> pointwise_annihilation1(const FockBasis& basis,
                                                const ModeSet& modes,
                                                const FockVector& psi) {
    if (psi.size() != static_cast<Eigen::Index>(basis.dim()))
        throw DimensionError("state vector does not match basis dimension");
    std::vector<FockVector> out;
    out.reserve(basis.mode_count());
    for (int k = 0; k < basis.mode_count(); ++k) {
        FockVector v = FockVector::Zero(basis.dim());
        for (std::size_t s = 0; s < basis.dim(); ++s) {
            int nk = basis.occupation(s, k);
            if (nk == 0) continue;
            v[basis.lowered(s, k)] += std::sqrt(double(nk)) * psi[s];
        }
        out.push_back(v / std::sqrt(modes.mode(k).weight));
    }
    return out;
}

PointwiseSecond::PointwiseSecond(int mode_count, Eigen::Index dim) : m_(mode_count) {
    tri_.assign(static_cast<std::size_t>(m_) * (m_ + 1) / 2, FockVector::Zero(dim));
}

std::size_t PointwiseSecond::slot(int k, int q) const {
    if (k > q) std::swap(k, q);
    if (k < 0 || q >= m_) throw DimensionError("mode pair out of range");
    // row-wise upper triangle offset
    return static_cast<std::size_t>(k) * (2 * m_ - k - 1) / 2 + q;
}

FockVector& PointwiseSecond::at(int k, int q) { return tri_[slot(k, q)]; }
const FockVector& PointwiseSecond::at(int k, int q) const { return tri_[slot(k, q)]; }

PointwiseSecond pointwise_annihilation2(const FockBasis& basis, const ModeSet& modes,
                                        const FockVector& psi) {
    auto first = pointwise_annihilation1(basis, modes, psi);
    PointwiseSecond out(basis.mode_count(), basis.dim());
    for (int k = 0; k < basis.mode_count(); ++k) {
        // apply a_k / sqrt(w_k) once more to (A1 psi)(q) for q >= k
        for (int q = k; q < basis.mode_count(); ++q) {
            FockVector v = FockVector::Zero(basis.dim());
            const FockVector& src = first[q];
            for (std::size_t s = 0; s < basis.dim(); ++s) {
                int nk = basis.occupation(s, k);
                if (nk == 0 || src[s] == Complex(0, 0)) continue;
                v[basis.lowered(s, k)] += std::sqrt(double(nk)) * src[s];
            }
            out.at(k, q) = v / std::sqrt(modes.mode(k).weight);
        }
    }
    return out;
}

}  // namespace sbl
