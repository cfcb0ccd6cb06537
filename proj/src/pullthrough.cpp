#include "sbl/pullthrough.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/IterativeLinearSolvers>

namespace sbl {

namespace {

constexpr double kCgTol = 1e-10;

using Solver = Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>;

struct GroundState {
    FockBasis basis;
    SparseOp f_minus;
    SparseOp f_plus;
    Vector psi;
    double energy;
};

GroundState solve_ground(const ModelParams& params, const Cutoffs& cutoffs) {
    params.validate();
    FockBasis basis(static_cast<int>(params.modes.size()), cutoffs.n_max);
    const int sign_minus = params.eta >= 0 ? -1 : +1;  // parity coefficient -|eta|
    SparseOp f_minus = build_fiber(params, basis, sign_minus);
    SparseOp f_plus = build_fiber(params, basis, -sign_minus);
    SpectralResult gs = eigensolve(f_minus, 1, cutoffs.solver);
    Vector psi = gs.eigenvectors.front();
    psi /= psi.norm();
    return {std::move(basis), std::move(f_minus), std::move(f_plus), std::move(psi),
            gs.eigenvalues.front()};
}

double moment(const FockBasis& basis, const Vector& psi, int a) {
    double acc = 0;
    for (std::size_t s = 0; s < basis.dim(); ++s)
        acc += std::pow(static_cast<double>(basis.total(s)), a) * std::norm(psi[s]);
    return acc;
}

// field(f_j)^{power} psi for every coupling slot with a nonzero coefficient
std::vector<Vector> power_applications(const ModelParams& params, const FockBasis& basis,
                                       const Vector& psi, int drop) {
    std::vector<Vector> out(params.coupling.count());
    for (std::size_t j = 1; j <= params.coupling.count(); ++j) {
        if (params.alpha[j - 1] == 0.0) continue;
        const int power = static_cast<int>(j) - drop;
        if (power < 0) continue;
        if (power == 0)
            out[j - 1] = psi;
        else
            out[j - 1] =
                field_power(basis, params.coupling.vec(j), params.modes, power).apply(psi);
    }
    return out;
}

void run_chunked(int count, int max_threads,
                 const std::function<void(int, int)>& chunk_fn) {
    const int threads = std::max(1, std::min(count, max_threads));
    if (threads == 1) {
        chunk_fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
        const int lo = t * count / threads;
        const int hi = (t + 1) * count / threads;
        pool.emplace_back([&, t, lo, hi]() {
            try {
                chunk_fn(lo, hi);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

PullThroughReport pull_through_residual(const ModelParams& params, const Cutoffs& cutoffs,
                                        int max_threads) {
    if (max_threads < 1) throw PreconditionError("max_threads must be at least 1");
    GroundState g = solve_ground(params, cutoffs);
    const int m = g.basis.mode_count();
    const double e0 = g.energy;

    const double e_plus = eigensolve(g.f_plus, 1, cutoffs.solver).eigenvalues.front();
    double omega_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) omega_min = std::min(omega_min, params.modes.mode(k).energy);
    if (e_plus - e0 + omega_min <= 0)
        throw SolverError("shifted pull-through system is not positive definite");

    std::vector<Vector> phi_psi = power_applications(params, g.basis, g.psi, 1);
    std::vector<FockVector> lhs = pointwise_annihilation1(g.basis, params.modes, g.psi);

    std::vector<Vector> recon(m);
    std::vector<int> iters(m, 0);
    const Eigen::Index dim = static_cast<Eigen::Index>(g.basis.dim());

    run_chunked(m, max_threads, [&](int lo, int hi) {
        Solver cg;
        cg.setTolerance(kCgTol);
        Vector guess;
        bool warm = false;
        for (int k = lo; k < hi; ++k) {
            SparseOp shifted = g.f_plus.shifted(params.modes.mode(k).energy - e0);
            cg.compute(shifted.matrix());
            Vector b = Vector::Zero(dim);
            for (std::size_t j = 1; j <= params.coupling.count(); ++j) {
                if (params.alpha[j - 1] == 0.0) continue;
                const Complex fj = params.coupling.amplitude(j, k);
                if (fj == Complex(0, 0)) continue;
                b -= static_cast<double>(j) * params.alpha[j - 1] * fj * phi_psi[j - 1];
            }
            Vector x = warm ? cg.solveWithGuess(b, guess).eval() : cg.solve(b).eval();
            if (cg.info() != Eigen::Success)
                throw SolverError("pull-through solve stalled on mode " + std::to_string(k));
            guess = x;
            warm = true;
            iters[k] = static_cast<int>(cg.iterations());
            recon[k] = std::move(x);
        }
    });

    PullThroughReport report;
    report.ground_energy = e0;
    double num = 0, den = 0;
    for (int k = 0; k < m; ++k) {
        const double w = params.modes.mode(k).weight;
        const double r = (lhs[k] - recon[k]).norm();
        report.mode_residual.push_back(r);
        report.rhs_norm.push_back(recon[k].norm());
        report.cg_iterations += iters[k];
        num += w * r * r;
        den += w * lhs[k].squaredNorm();
    }
    report.aggregate = std::sqrt(num);
    report.relative = den > 1e-300 ? std::sqrt(num / den) : 0.0;
    report.mean_n = moment(g.basis, g.psi, 1);
    report.mean_n2 = moment(g.basis, g.psi, 2);
    return report;
}

SecondOrderReport pull_through_second_order(const ModelParams& params, const Cutoffs& cutoffs) {
    GroundState g = solve_ground(params, cutoffs);
    const int m = g.basis.mode_count();
    const double e0 = g.energy;
    const Eigen::Index dim = static_cast<Eigen::Index>(g.basis.dim());

    std::vector<FockVector> a1 = pointwise_annihilation1(g.basis, params.modes, g.psi);
    PointwiseSecond a2 = pointwise_annihilation2(g.basis, params.modes, g.psi);

    // field(f_j)^{j-1} applied to each first-order component, and
    // field(f_j)^{j-2} applied to psi
    std::vector<std::vector<Vector>> phi_a1(params.coupling.count());
    for (std::size_t j = 1; j <= params.coupling.count(); ++j) {
        if (params.alpha[j - 1] == 0.0) continue;
        phi_a1[j - 1].resize(m);
        if (j == 1) {
            for (int q = 0; q < m; ++q) phi_a1[j - 1][q] = a1[q];
        } else {
            SparseOp fp = field_power(g.basis, params.coupling.vec(j), params.modes,
                                      static_cast<int>(j) - 1);
            for (int q = 0; q < m; ++q) phi_a1[j - 1][q] = fp.apply(a1[q]);
        }
    }
    std::vector<Vector> phi2_psi = power_applications(params, g.basis, g.psi, 2);

    SecondOrderReport report;
    report.ground_energy = e0;

    Solver cg;
    cg.setTolerance(kCgTol);
    Vector guess;
    bool warm = false;
    double num = 0, den = 0;
    for (int k = 0; k < m; ++k) {
        for (int q = k; q < m; ++q) {
            const double shift =
                params.modes.mode(k).energy + params.modes.mode(q).energy - e0;
            SparseOp shifted = g.f_minus.shifted(shift);
            cg.compute(shifted.matrix());
            Vector b = Vector::Zero(dim);
            for (std::size_t j = 1; j <= params.coupling.count(); ++j) {
                const double aj = params.alpha[j - 1];
                if (aj == 0.0) continue;
                const Complex fk = params.coupling.amplitude(j, k);
                const Complex fq = params.coupling.amplitude(j, q);
                const double dj = static_cast<double>(j);
                b -= dj * aj * (fk * phi_a1[j - 1][q] + fq * phi_a1[j - 1][k]);
                if (j >= 2) b -= dj * (dj - 1.0) * aj * fk * fq * phi2_psi[j - 1];
            }
            Vector x = warm ? cg.solveWithGuess(b, guess).eval() : cg.solve(b).eval();
            if (cg.info() != Eigen::Success)
                throw SolverError("second-order solve stalled on pair (" +
                                  std::to_string(k) + ", " + std::to_string(q) + ")");
            guess = x;
            warm = true;
            report.cg_iterations += static_cast<int>(cg.iterations());

            PairResidual pr;
            pr.k = k;
            pr.q = q;
            pr.residual = (a2.at(k, q) - x).norm();
            pr.rhs_norm = x.norm();
            report.pairs.push_back(pr);
            const double mult = (k == q ? 1.0 : 2.0) * params.modes.mode(k).weight *
                                params.modes.mode(q).weight;
            num += mult * pr.residual * pr.residual;
            den += mult * a2.at(k, q).squaredNorm();
        }
    }
    report.aggregate = std::sqrt(num);
    report.relative = den > 1e-300 ? std::sqrt(num / den) : 0.0;

    for (int k = 0; k < m; ++k) {
        SparseOp ak = mode_annihilator(g.basis, k);
        const double sk = std::sqrt(params.modes.mode(k).weight);
        for (int q = k + 1; q < m; ++q) {
            SparseOp aq = mode_annihilator(g.basis, q);
            const double sq = std::sqrt(params.modes.mode(q).weight);
            const double defect = (ak.apply(a1[q]) / sk - aq.apply(a1[k]) / sq).norm();
            report.symmetry_defect = std::max(report.symmetry_defect, defect);
        }
    }
    return report;
}

MomentTable moment_stability(const ModelParams& params, const std::vector<int>& schedule,
                             const std::vector<int>& a_values,
                             const EigensolveOptions& options) {
    params.validate();
    if (schedule.empty()) throw PreconditionError("cutoff schedule must not be empty");
    for (std::size_t t = 1; t < schedule.size(); ++t)
        if (schedule[t] <= schedule[t - 1])
            throw PreconditionError("cutoff schedule must increase strictly");
    if (a_values.empty()) throw PreconditionError("no moment exponents requested");
    for (int a : a_values)
        if (a < 0) throw PreconditionError("moment exponents must be nonnegative");

    MomentTable table;
    table.a_values = a_values;
    Cutoffs cut;
    cut.solver = options;
    for (int n_max : schedule) {
        cut.n_max = n_max;
        GroundState g = solve_ground(params, cut);
        MomentRow row;
        row.n_max = n_max;
        for (int a : a_values) row.values.push_back(moment(g.basis, g.psi, a));
        table.rows.push_back(row);
    }

    table.growth_flag.assign(a_values.size(), false);
    if (table.rows.size() >= 3) {
        for (std::size_t i = 0; i < a_values.size(); ++i) {
            double max_inc = 0, last_inc = 0;
            bool increasing = true;
            for (std::size_t t = 1; t < table.rows.size(); ++t) {
                const double inc = table.rows[t].values[i] - table.rows[t - 1].values[i];
                if (inc <= 0) increasing = false;
                max_inc = std::max(max_inc, inc);
                last_inc = inc;
            }
            table.growth_flag[i] = increasing && last_inc >= 0.5 * max_inc;
        }
    }
    return table;
}

double dgamma_form_defect(const FockBasis& basis, const ModeSet& modes,
                          const std::vector<double>& b, const FockVector& psi) {
    if (static_cast<int>(b.size()) != basis.mode_count())
        throw DimensionError("multiplier length does not match the mode count");
    if (psi.size() != static_cast<Eigen::Index>(basis.dim()))
        throw DimensionError("state length does not match the basis");

    double lhs = 0;
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        double diag = 0;
        for (int k = 0; k < basis.mode_count(); ++k) diag += b[k] * basis.occupation(s, k);
        lhs += diag * std::norm(psi[s]);
    }
    std::vector<FockVector> a1 = pointwise_annihilation1(basis, modes, psi);
    double rhs = 0;
    for (int k = 0; k < basis.mode_count(); ++k)
        rhs += b[k] * modes.mode(k).weight * a1[k].squaredNorm();
    return std::abs(lhs - rhs);
}

}  // namespace sbl
