#include "sbl/model.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include <Eigen/Eigenvalues>

namespace sbl {

namespace {

void require_structure(const ModelParams& params) {
    auto report = validate_hypotheses(params);
    if (!report.check(1).pass)
        throw ModelError("model structure rejected: " + report.check(1).reason);
}

void append_scaled(std::vector<Triplet>& out, const SparseMatrix& m, Complex scale,
                   int row_offset, int col_offset) {
    for (int o = 0; o < m.outerSize(); ++o)
        for (SparseMatrix::InnerIterator it(m, o); it; ++it)
            out.emplace_back(static_cast<int>(it.row()) + row_offset,
                             static_cast<int>(it.col()) + col_offset,
                             scale * it.value());
}

}  // namespace

SparseOp build_fiber(const ModelParams& params, const FockBasis& basis, int sign) {
    params.validate();
    require_structure(params);
    if (sign != 1 && sign != -1)
        throw PreconditionError("fiber sign must be +1 or -1");

    std::vector<Triplet> entries;
    append_scaled(entries, gamma_parity(basis).matrix(), Complex(sign * params.eta, 0), 0, 0);
    append_scaled(entries, dgamma(basis, params.modes.energies()).matrix(), Complex(1, 0), 0, 0);
    for (std::size_t i = 1; i <= params.coupling.count(); ++i) {
        if (params.alpha[i - 1] == 0.0) continue;
        SparseOp p = field_power(basis, params.coupling.vec(i), params.modes,
                                 static_cast<int>(i));
        append_scaled(entries, p.matrix(), Complex(params.alpha[i - 1], 0), 0, 0);
    }
    return SparseOp(basis.dim(), entries, true);
}

SparseOp build_full(const ModelParams& params, const SpinFockBasis& basis) {
    params.validate();
    require_structure(params);
    const int d = static_cast<int>(basis.fock().dim());

    std::vector<Triplet> entries;
    // eta sigma_z (x) identity
    for (int s = 0; s < d; ++s) {
        entries.emplace_back(s, s, Complex(params.eta, 0));
        entries.emplace_back(d + s, d + s, Complex(-params.eta, 0));
    }
    // identity (x) dGamma(omega)
    const SparseMatrix number = dgamma(basis.fock(), params.modes.energies()).matrix();
    append_scaled(entries, number, Complex(1, 0), 0, 0);
    append_scaled(entries, number, Complex(1, 0), d, d);
    // couplings: (sigma_x (x) field)^i = sigma_x^(i mod 2) (x) field^i
    for (std::size_t i = 1; i <= params.coupling.count(); ++i) {
        if (params.alpha[i - 1] == 0.0) continue;
        SparseOp p = field_power(basis.fock(), params.coupling.vec(i), params.modes,
                                 static_cast<int>(i));
        Complex a(params.alpha[i - 1], 0);
        if (i % 2 == 1) {
            append_scaled(entries, p.matrix(), a, 0, d);
            append_scaled(entries, p.matrix(), a, d, 0);
        } else {
            append_scaled(entries, p.matrix(), a, 0, 0);
            append_scaled(entries, p.matrix(), a, d, d);
        }
    }
    return SparseOp(basis.dim(), entries, true);
}

SparseOp parity_unitary(const SpinFockBasis& basis) {
    const int d = static_cast<int>(basis.fock().dim());
    std::vector<Triplet> entries;
    entries.reserve(2 * d);
    for (int s = 0; s < d; ++s) {
        if (basis.fock().total(s) % 2 == 0) {
            entries.emplace_back(s, s, Complex(1, 0));
            entries.emplace_back(d + s, d + s, Complex(1, 0));
        } else {
            entries.emplace_back(s, d + s, Complex(1, 0));
            entries.emplace_back(d + s, s, Complex(1, 0));
        }
    }
    return SparseOp(basis.dim(), entries, true);
}

OperatorBundle build_bundle(const ModelParams& params, const FockBasis& basis) {
    SpinFockBasis spin(basis);
    OperatorBundle b{build_full(params, spin),
                     build_fiber(params, basis, +1),
                     build_fiber(params, basis, -1),
                     parity_unitary(spin),
                     params_hash(params, basis.cutoff()),
                     basis.cutoff()};
    return b;
}

Decomposition decompose(const OperatorBundle& bundle) {
    const Eigen::Index d = bundle.f_plus.dim();
    if (bundle.h_full.dim() != 2 * d)
        throw DimensionError("bundle operators built at mismatched cutoffs");

    const SparseMatrix& u = bundle.u_parity.matrix();
    SparseMatrix conj = SparseMatrix(u * SparseMatrix(bundle.h_full.matrix() * u));

    Decomposition out;
    for (int o = 0; o < conj.outerSize(); ++o)
        for (SparseMatrix::InnerIterator it(conj, o); it; ++it)
            if ((it.row() < d) != (it.col() < d))
                out.offblock_norm = std::max(out.offblock_norm, std::abs(it.value()));
    if (out.offblock_norm > 1e-12)
        throw ModelError("block decomposition failed: off-block norm " +
                         std::to_string(out.offblock_norm));

    SparseOp t(std::move(conj), false);
    out.block_plus = t.block(0, 0, d, true);
    out.block_minus = t.block(d, d, d, true);
    out.block_defect = std::max((out.block_plus - bundle.f_plus).max_abs(),
                                (out.block_minus - bundle.f_minus).max_abs());
    if (out.block_defect > 1e-13)
        throw ModelError("block decomposition failed: blocks deviate from fibers by " +
                         std::to_string(out.block_defect));
    return out;
}

std::vector<double> decoupled_spectrum(const ModelParams& params,
                                       const std::vector<int>& coupled_modes, int n_max,
                                       int free_quanta_cap, double energy_ceiling) {
    params.validate();
    const int m = static_cast<int>(params.modes.size());
    std::vector<bool> coupled(m, false);
    for (int k : coupled_modes) {
        if (k < 0 || k >= m) throw PreconditionError("coupled mode index out of range");
        if (coupled[k]) throw PreconditionError("duplicate coupled mode index");
        coupled[k] = true;
    }
    if (coupled_modes.empty())
        throw PreconditionError("at least one coupled mode is required");
    for (std::size_t i = 1; i <= params.coupling.count(); ++i)
        for (int k = 0; k < m; ++k)
            if (!coupled[k] && params.coupling.amplitude(i, k) != Complex(0, 0))
                throw PreconditionError("coupling vector " + std::to_string(i) +
                                        " is nonzero on free mode " + std::to_string(k));

    // reduced model on the coupled modes, order preserved
    std::vector<Mode> reduced_modes;
    for (int k = 0; k < m; ++k)
        if (coupled[k]) reduced_modes.push_back(params.modes.mode(k));
    std::vector<std::vector<Complex>> reduced_vecs(params.coupling.count());
    for (std::size_t i = 1; i <= params.coupling.count(); ++i)
        for (int k = 0; k < m; ++k)
            if (coupled[k]) reduced_vecs[i - 1].push_back(params.coupling.amplitude(i, k));
    ModelParams reduced{params.eta, params.alpha, CouplingFamily(reduced_vecs),
                        ModeSet(reduced_modes, params.modes.label())};

    std::vector<int> free_modes;
    for (int k = 0; k < m; ++k)
        if (!coupled[k]) free_modes.push_back(k);

    const int cap = std::min(free_quanta_cap, n_max);
    if (cap < 0) throw PreconditionError("free quanta cap must be nonnegative");

    // sector spectra cache: per free-quanta count q the reduced fiber has
    // cutoff n_max - q and parity coefficient flipped q times
    std::map<int, std::vector<double>> sector;
    auto sector_spectrum = [&](int q) -> const std::vector<double>& {
        auto it = sector.find(q);
        if (it != sector.end()) return it->second;
        FockBasis basis(static_cast<int>(reduced.modes.size()), n_max - q);
        SparseOp f = build_fiber(reduced, basis, q % 2 == 0 ? +1 : -1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.dense(),
                                                           Eigen::EigenvaluesOnly);
        std::vector<double> vals(es.eigenvalues().data(),
                                 es.eigenvalues().data() + es.eigenvalues().size());
        return sector.emplace(q, std::move(vals)).first->second;
    };

    std::vector<double> out;
    auto emit = [&](auto&& self, std::size_t pos, int used, double free_energy) -> void {
        if (free_energy > energy_ceiling) return;
        if (pos == free_modes.size()) {
            for (double mu : sector_spectrum(used)) out.push_back(mu + free_energy);
            return;
        }
        double omega = params.modes.mode(free_modes[pos]).energy;
        for (int c = 0; used + c <= cap; ++c) {
            double e = free_energy + c * omega;
            if (e > energy_ceiling) break;
            self(self, pos + 1, used + c, e);
        }
    };
    emit(emit, 0, 0, 0.0);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t params_hash(const ModelParams& params, int n_max) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const char* buf) {
        for (const char* p = buf; *p; ++p) {
            h ^= static_cast<unsigned char>(*p);
            h *= 1099511628211ull;
        }
    };
    char buf[64];
    auto mixd = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g;", v);
        mix(buf);
    };
    mixd(params.eta);
    for (double a : params.alpha) mixd(a);
    for (const auto& mode : params.modes.modes()) {
        mixd(mode.energy);
        mixd(mode.weight);
        mix(mode.tag == ModeTag::essential ? "e;" : "d;");
    }
    for (std::size_t i = 1; i <= params.coupling.count(); ++i)
        for (std::size_t k = 0; k < params.coupling.mode_count(); ++k) {
            mixd(params.coupling.amplitude(i, k).real());
            mixd(params.coupling.amplitude(i, k).imag());
        }
    std::snprintf(buf, sizeof buf, "n%d;", n_max);
    mix(buf);
    return h;
}

}  // namespace sbl
