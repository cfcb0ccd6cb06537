#include "sbl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/Polynomials>

namespace sbl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SpectralResult dense_path(const SparseOp& op, int count, const EigensolveOptions& opt) {
    SpectralResult out;
    out.requested = count;
    out.tolerance = opt.tol;
    out.method = "dense";

    Eigen::VectorXd vals;
    Eigen::MatrixXcd vecs;
    if (op.is_real()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense().real());
        if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
        vals = es.eigenvalues();
        vecs = es.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
        if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
        vals = es.eigenvalues();
        vecs = es.eigenvectors();
    }
    for (int i = 0; i < count; ++i) {
        Vector v = vecs.col(i);
        out.eigenvalues.push_back(vals[i]);
        out.eigenvectors.push_back(v);
        out.residuals.push_back((op.apply(v) - vals[i] * v).norm());
    }
    return out;
}

struct RitzPairs {
    Eigen::VectorXd theta;
    Eigen::MatrixXd s;
};

RitzPairs tridiagonal_ritz(const std::vector<double>& a, const std::vector<double>& b) {
    const int j = static_cast<int>(a.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(j, j);
    for (int i = 0; i < j; ++i) {
        t(i, i) = a[i];
        if (i + 1 < j) {
            t(i, i + 1) = b[i];
            t(i + 1, i) = b[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return {es.eigenvalues(), es.eigenvectors()};
}

// Lanczos with full reorthogonalization (two classical Gram-Schmidt passes
// per step) and a seeded start vector. `apply` is the operator whose extreme
// eigenpairs drive the recurrence; `residual_op`/`to_original` translate a
// Ritz value back to the operator the caller cares about, so the same loop
// serves the direct and the shift-inverted variant.
SpectralResult lanczos_path(const SparseOp& residual_op, int count,
                            const EigensolveOptions& opt,
                            const std::function<Vector(const Vector&)>& apply,
                            bool select_largest,
                            const std::function<double(double)>& to_original,
                            const std::string& method_name) {
    const Eigen::Index dim = residual_op.dim();
    const int budget = std::max(opt.budget_factor * count, count + 2);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_vector = [&]() {
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            double re = gauss(rng);
            double im = gauss(rng);
            v[i] = Complex(re, im);
        }
        return v;
    };

    Eigen::MatrixXcd v(dim, budget + 1);
    std::vector<double> a, b;
    a.reserve(budget);
    b.reserve(budget);

    v.col(0) = random_vector().normalized();
    double scale = 1.0;
    int j = 0;
    std::string failure;

    auto assemble = [&](const RitzPairs& rp) {
        SpectralResult out;
        out.requested = count;
        out.tolerance = opt.tol;
        out.method = method_name;
        out.iterations = j;
        const int m = static_cast<int>(rp.theta.size());
        for (int i = 0; i < count; ++i) {
            const int col = select_largest ? m - 1 - i : i;
            Vector x = v.leftCols(m) * rp.s.col(col).cast<Complex>();
            x.normalize();
            const double lambda = to_original(rp.theta[col]);
            out.eigenvalues.push_back(lambda);
            out.eigenvectors.push_back(x);
            out.residuals.push_back((residual_op.apply(x) - lambda * x).norm());
        }
        // ascending in the original spectrum
        std::vector<int> order(count);
        for (int i = 0; i < count; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int p, int q) {
            return out.eigenvalues[p] < out.eigenvalues[q];
        });
        SpectralResult sorted = out;
        for (int i = 0; i < count; ++i) {
            sorted.eigenvalues[i] = out.eigenvalues[order[i]];
            sorted.eigenvectors[i] = out.eigenvectors[order[i]];
            sorted.residuals[i] = out.residuals[order[i]];
        }
        return sorted;
    };

    auto converged = [&](const SpectralResult& r) {
        for (int i = 0; i < count; ++i)
            if (r.residuals[i] > opt.tol * (1.0 + std::abs(r.eigenvalues[i]))) return false;
        return true;
    };

    while (j < budget) {
        Vector w = apply(v.col(j));
        const double alpha = std::real(v.col(j).dot(w));
        w -= alpha * v.col(j);
        if (j > 0) w -= b[j - 1] * v.col(j - 1);
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXcd h = v.leftCols(j + 1).adjoint() * w;
            w -= v.leftCols(j + 1) * h;
        }
        double beta = w.norm();
        a.push_back(alpha);
        scale = std::max({scale, std::abs(alpha) + beta, j > 0 ? b[j - 1] : 0.0});

        if (beta <= 1e-13 * scale) {
            // invariant subspace found; continue in a fresh random direction
            Vector fresh = random_vector();
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXcd h = v.leftCols(j + 1).adjoint() * fresh;
                fresh -= v.leftCols(j + 1) * h;
            }
            if (fresh.norm() <= 1e-13) {
                ++j;
                b.push_back(0.0);
                v.col(j).setZero();
                break;  // space exhausted
            }
            beta = 0.0;
            b.push_back(beta);
            v.col(j + 1) = fresh.normalized();
        } else {
            b.push_back(beta);
            v.col(j + 1) = w / beta;
        }
        ++j;

        const bool checkpoint = j >= count && (j % 10 == 0 || j == budget);
        if (!checkpoint) continue;
        std::vector<double> interior(b.begin(), b.begin() + (j - 1));
        RitzPairs rp = tridiagonal_ritz(std::vector<double>(a.begin(), a.begin() + j),
                                        interior);
        bool ritz_ok = true;
        const double tail = b[j - 1];
        for (int i = 0; i < count && ritz_ok; ++i) {
            const int col = select_largest ? j - 1 - i : i;
            if (col < 0) {
                ritz_ok = false;
                break;
            }
            const double est = std::abs(tail * rp.s(j - 1, col));
            if (est > opt.tol * (1.0 + std::abs(rp.theta[col]))) ritz_ok = false;
        }
        if (!ritz_ok) continue;
        SpectralResult r = assemble(rp);
        if (converged(r)) return r;
    }

    // budget exhausted: report the best available pairs or fail loudly
    if (j >= count) {
        RitzPairs rp = tridiagonal_ritz(
            std::vector<double>(a.begin(), a.begin() + j),
            std::vector<double>(b.begin(), b.begin() + (j - 1)));
        SpectralResult r = assemble(rp);
        if (converged(r)) return r;
        double worst = 0;
        for (double res : r.residuals) worst = std::max(worst, res);
        std::ostringstream os;
        os << method_name << " did not converge: " << j << " iterations, worst residual "
           << worst << ", tolerance " << opt.tol;
        throw SolverError(os.str());
    }
    throw SolverError(method_name + " ran out of directions before reaching " +
                      std::to_string(count) + " pairs");
}

double gershgorin_floor(const SparseOp& op) {
    const SparseMatrix& m = op.matrix();
    double lo = std::numeric_limits<double>::infinity();
    for (int o = 0; o < m.outerSize(); ++o) {
        double center = 0, radius = 0;
        for (SparseMatrix::InnerIterator it(m, o); it; ++it) {
            if (it.row() == it.col())
                center = std::real(it.value());
            else
                radius += std::abs(it.value());
        }
        lo = std::min(lo, center - radius);
    }
    return lo;
}

SpectralResult lanczos_dispatch(const SparseOp& op, int count, const EigensolveOptions& opt) {
    if (!opt.shift_invert) {
        auto apply = [&op](const Vector& x) { return op.apply(x); };
        return lanczos_path(op, count, opt, apply, /*select_largest=*/false,
                            [](double t) { return t; }, "lanczos");
    }

    if (static_cast<std::size_t>(op.dim()) > opt.shift_invert_dim_limit)
        throw SolverError("shift-invert factorization disabled above dimension " +
                          std::to_string(opt.shift_invert_dim_limit));
    const double sigma = gershgorin_floor(op) - 1.0;
    Eigen::SparseMatrix<Complex> shifted = op.matrix();
    Eigen::SparseMatrix<Complex> ident(op.dim(), op.dim());
    ident.setIdentity();
    shifted -= sigma * ident;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<Complex>> factor(shifted);
    if (factor.info() != Eigen::Success)
        throw SolverError("shift-invert factorization failed");
    auto apply = [&factor](const Vector& x) { return Vector(factor.solve(x)); };
    return lanczos_path(op, count, opt, apply, /*select_largest=*/true,
                        [sigma](double t) { return sigma + 1.0 / t; },
                        "lanczos+shift-invert");
}

}  // namespace

SpectralResult eigensolve(const SparseOp& op, int count, const EigensolveOptions& options) {
    if (!op.hermitian())
        throw PreconditionError("eigensolve requires a hermitian-flagged operator");
    if (count < 1) throw PreconditionError("eigensolve needs count >= 1");
    if (op.dim() == 0) throw DimensionError("eigensolve on an empty operator");
    count = std::min<int>(count, static_cast<int>(op.dim()));

    auto method = options.method;
    if (method == EigensolveOptions::Method::automatic)
        method = static_cast<std::size_t>(op.dim()) <= options.dense_threshold
                     ? EigensolveOptions::Method::dense
                     : EigensolveOptions::Method::lanczos;
    if (method == EigensolveOptions::Method::dense) return dense_path(op, count, options);
    if (static_cast<std::size_t>(count) == static_cast<std::size_t>(op.dim()))
        return dense_path(op, count, options);  // full spectrum needs the dense path
    return lanczos_dispatch(op, count, options);
}

SpectralResult eigensolve(const SparseOp& op, int count, double tol) {
    EigensolveOptions opt;
    opt.tol = tol;
    return eigensolve(op, count, opt);
}

int ground_degeneracy(const std::vector<double>& eigenvalues, double tol) {
    if (eigenvalues.empty()) return 0;
    const double e0 = eigenvalues.front();
    int d = 0;
    for (double e : eigenvalues)
        if (std::abs(e - e0) <= tol * (1.0 + std::abs(e0))) ++d;
    return d;
}

namespace {

double evaluate_ascending(const Eigen::VectorXd& coeff, double x) {
    double acc = 0;
    for (Eigen::Index p = coeff.size() - 1; p >= 0; --p) acc = acc * x + coeff[p];
    return acc;
}

// Global minimum over the reals of a polynomial with even degree and a
// positive leading coefficient: stationary points through companion-matrix
// root finding, with a coarse scan plus local refinement as the fallback.
double polynomial_minimum(const std::vector<double>& coeff) {
    const int deg = static_cast<int>(coeff.size()) - 1;
    Eigen::VectorXd p(deg + 1);
    for (int i = 0; i <= deg; ++i) p[i] = coeff[i];
    Eigen::VectorXd dp(deg);
    for (int i = 1; i <= deg; ++i) dp[i - 1] = i * coeff[i];

    double best = evaluate_ascending(p, 0.0);
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(dp);
    for (Eigen::Index r = 0; r < solver.roots().size(); ++r) {
        const auto root = solver.roots()[r];
        if (std::abs(root.imag()) > 1e-8 * (1.0 + std::abs(root.real()))) continue;
        best = std::min(best, evaluate_ascending(p, root.real()));
    }

    // scan fallback over the Cauchy root bound of the derivative
    double bound = 1.0;
    for (int i = 0; i < deg - 1; ++i) bound = std::max(bound, std::abs(dp[i]) / dp[deg - 1]);
    bound += 1.0;
    const int samples = 400;
    double bx = 0.0, bv = evaluate_ascending(p, 0.0);
    for (int s = 0; s <= samples; ++s) {
        double x = -bound + 2.0 * bound * s / samples;
        double vx = evaluate_ascending(p, x);
        if (vx < bv) {
            bv = vx;
            bx = x;
        }
    }
    double lo = bx - 2.0 * bound / samples, hi = bx + 2.0 * bound / samples;
    for (int it = 0; it < 200; ++it) {
        double x1 = lo + (hi - lo) / 3.0, x2 = hi - (hi - lo) / 3.0;
        if (evaluate_ascending(p, x1) < evaluate_ascending(p, x2))
            hi = x2;
        else
            lo = x1;
    }
    best = std::min(best, evaluate_ascending(p, 0.5 * (lo + hi)));
    return best;
}

}  // namespace

double interaction_lower_bound(const std::vector<double>& alpha, const std::set<int>& leading) {
    const int count = static_cast<int>(alpha.size());
    if (count <= 0 || count % 2 != 0)
        throw PreconditionError("alpha must hold a positive even number of coefficients");
    if (leading.empty() || *leading.rbegin() != count)
        throw PreconditionError("the top index must be a leading term");
    for (int i : leading) {
        if (i < 2 || i > count) throw PreconditionError("leading index out of range");
        if (i % 2 != 0) throw PreconditionError("leading indices must be even");
        if (i == 2 ? alpha[1] < 0 : alpha[i - 1] <= 0)
            throw PreconditionError("leading coefficient not positive");
    }

    double c0 = 0.0;
    for (int ib = 2; ib <= count; ib += 2) {
        if (alpha[ib - 1] <= 0) continue;
        std::vector<int> lower;
        for (int jdx = 2; jdx < ib; ++jdx)
            if (alpha[jdx - 1] != 0.0) lower.push_back(jdx);
        for (unsigned mask = 0; mask < (1u << lower.size()); ++mask) {
            std::vector<double> coeff(ib + 1, 0.0);
            coeff[ib] = alpha[ib - 1];
            for (std::size_t t = 0; t < lower.size(); ++t)
                if (mask & (1u << t)) coeff[lower[t]] = alpha[lower[t] - 1];
            c0 = std::min(c0, polynomial_minimum(coeff));
        }
    }
    return (count / 2) * c0;
}

namespace {

// Fiber pair keyed by the magnitude convention: `first` carries parity
// coefficient -|eta|, `second` +|eta|.
std::pair<SparseOp, SparseOp> magnitude_fibers(const ModelParams& params,
                                               const FockBasis& basis) {
    SparseOp plus = build_fiber(params, basis, +1);
    SparseOp minus = build_fiber(params, basis, -1);
    if (params.eta < 0) std::swap(plus, minus);
    return {std::move(minus), std::move(plus)};
}

}  // namespace

GroundStateReport ground_state_analysis(const ModelParams& params, const Cutoffs& cutoffs) {
    params.validate();
    FockBasis basis(static_cast<int>(params.modes.size()), cutoffs.n_max);
    OperatorBundle bundle = build_bundle(params, basis);

    const int kfib = std::min<int>(4, static_cast<int>(basis.dim()));
    SpectralResult plus = eigensolve(bundle.f_plus, kfib, cutoffs.solver);
    SpectralResult minus = eigensolve(bundle.f_minus, kfib, cutoffs.solver);
    if (params.eta < 0) std::swap(plus, minus);  // key results to -|eta| / +|eta|

    const int kfull = std::min<int>(6, static_cast<int>(bundle.h_full.dim()));
    SpectralResult full = eigensolve(bundle.h_full, kfull, cutoffs.solver);

    GroundStateReport r;
    r.e_full = full.eigenvalues.front();
    r.e_minus = minus.eigenvalues.front();
    r.e_plus = plus.eigenvalues.front();
    r.degeneracy = ground_degeneracy(full.eigenvalues);
    r.gap = r.degeneracy < static_cast<int>(full.eigenvalues.size())
                ? full.eigenvalues[r.degeneracy] - r.e_full
                : kNan;

    const Eigen::Index d = basis.dim();
    Vector u = bundle.u_parity.apply(full.eigenvectors.front().normalized());
    const double up = u.head(d).squaredNorm();
    const double down = u.tail(d).squaredNorm();
    r.ground_block = up >= down ? 0 : 1;
    r.leakage = std::min(up, down) / (up + down);

    Masses ms = masses(params.modes);
    r.m = ms.m;
    r.m_ess = ms.m_ess;
    r.excited_state_flag = 2.0 * std::abs(params.eta) < ms.m_ess;
    return r;
}

ExcitedStateCheck excited_state_check(const ModelParams& params, const Cutoffs& cutoffs) {
    params.validate();
    if (params.eta == 0.0)
        throw PreconditionError("excited-state criterion needs eta != 0");
    FockBasis basis(static_cast<int>(params.modes.size()), cutoffs.n_max);
    auto [fm, fp] = magnitude_fibers(params, basis);
    const double e_minus = eigensolve(fm, 1, cutoffs.solver).eigenvalues.front();
    const double e_plus = eigensolve(fp, 1, cutoffs.solver).eigenvalues.front();
    const double e_full = std::min(e_minus, e_plus);

    ExcitedStateCheck out;
    Masses ms = masses(params.modes);
    out.flag = 2.0 * std::abs(params.eta) < ms.m_ess;
    out.e_plus = e_plus;
    out.window_lo = e_full;
    out.window_hi = e_full + ms.m_ess;
    if (out.flag)
        out.in_window = e_plus > out.window_lo && e_plus <= out.window_hi + 1e-8;
    return out;
}

ThresholdReport hvz_threshold_diagnostic(const ModelParams& params, const Cutoffs& cutoffs) {
    params.validate();
    Masses ms = masses(params.modes);
    if (!std::isfinite(ms.m_ess))
        throw ModelError("no essential modes; threshold diagnostic unavailable");

    const int m = static_cast<int>(params.modes.size());
    FockBasis basis(m, cutoffs.n_max);
    auto [fm, fp] = magnitude_fibers(params, basis);
    const double e_full = std::min(eigensolve(fm, 1, cutoffs.solver).eigenvalues.front(),
                                   eigensolve(fp, 1, cutoffs.solver).eigenvalues.front());

    ThresholdReport report;
    report.threshold = e_full + ms.m_ess;

    // dense spectrum of the plus fiber hosts the matched values
    SparseOp host = build_fiber(params, basis, +1);
    EigensolveOptions full_opt = cutoffs.solver;
    full_opt.method = EigensolveOptions::Method::dense;
    if (basis.dim() > 6000)
        throw CapacityError("threshold diagnostic is dense-only; reduce the cutoff");
    SpectralResult spec = eigensolve(host, static_cast<int>(basis.dim()), full_opt);

    for (int k = 0; k < m; ++k) {
        if (params.modes.mode(k).tag != ModeTag::essential) continue;
        bool decoupled = true;
        for (std::size_t i = 1; i <= params.coupling.count() && decoupled; ++i)
            if (params.coupling.amplitude(i, k) != Complex(0, 0)) decoupled = false;
        if (!decoupled) continue;

        const double lambda = params.modes.mode(k).energy;
        for (int q = 1; q <= 2; ++q) {
            if (cutoffs.n_max - q < 0) continue;
            double ground;
            if (m == 1) {
                // no residual modes: the reduced fiber is the scalar
                // (+/-) eta on the bare vacuum
                ground = (q % 2 == 0 ? +1 : -1) * params.eta;
            } else {
                std::vector<Mode> rest_modes;
                std::vector<std::vector<Complex>> rest_vecs(params.coupling.count());
                for (int kk = 0; kk < m; ++kk) {
                    if (kk == k) continue;
                    rest_modes.push_back(params.modes.mode(kk));
                    for (std::size_t i = 1; i <= params.coupling.count(); ++i)
                        rest_vecs[i - 1].push_back(params.coupling.amplitude(i, kk));
                }
                ModelParams rest{params.eta, params.alpha, CouplingFamily(rest_vecs),
                                 ModeSet(rest_modes, params.modes.label())};
                FockBasis rb(m - 1, cutoffs.n_max - q);
                SparseOp rf = build_fiber(rest, rb, q % 2 == 0 ? +1 : -1);
                ground = eigensolve(rf, 1, cutoffs.solver).eigenvalues.front();
            }
            ThresholdEntry entry;
            entry.mode = k;
            entry.quanta = q;
            entry.predicted = ground + q * lambda;
            double dist = std::numeric_limits<double>::infinity();
            for (double e : spec.eigenvalues) dist = std::min(dist, std::abs(e - entry.predicted));
            entry.matched_distance = dist;
            entry.pass = dist <= 1e-10 * (1.0 + std::abs(entry.predicted));
            report.entries.push_back(entry);
        }
    }
    return report;
}

ConvergenceTable convergence_study(const ModelParams& params, const std::vector<int>& schedule,
                                   const EigensolveOptions& options) {
    params.validate();
    if (schedule.empty()) throw PreconditionError("cutoff schedule must not be empty");
    for (std::size_t t = 1; t < schedule.size(); ++t)
        if (schedule[t] <= schedule[t - 1])
            throw PreconditionError("cutoff schedule must increase strictly");

    ConvergenceTable table;
    for (std::size_t t = 0; t < schedule.size(); ++t) {
        FockBasis basis(static_cast<int>(params.modes.size()), schedule[t]);
        auto [fm, fp] = magnitude_fibers(params, basis);
        SpectralResult minus = eigensolve(fm, 1, options);
        SpectralResult plus = eigensolve(fp, 1, options);

        ConvergenceRow row;
        row.n_max = schedule[t];
        row.e_minus = minus.eigenvalues.front();
        row.e_plus = plus.eigenvalues.front();

        const Vector& psi = minus.eigenvectors.front();
        double wtop = 0;
        for (std::size_t s = 0; s < basis.dim(); ++s)
            if (basis.total(s) >= schedule[t] - 1) wtop += std::norm(psi[s]);
        row.boundary_weight = wtop / psi.squaredNorm();

        if (t == 0) {
            row.diff_minus = kNan;
            row.diff_plus = kNan;
        } else {
            row.diff_minus = row.e_minus - table.rows.back().e_minus;
            row.diff_plus = row.e_plus - table.rows.back().e_plus;
        }
        table.rows.push_back(row);
    }
    for (std::size_t t = 2; t < table.rows.size(); ++t) {
        const double prev = std::abs(table.rows[t - 1].diff_minus);
        const double cur = std::abs(table.rows[t].diff_minus);
        const double scale = 1.0 + std::abs(table.rows[t].e_minus);
        if (cur > prev + 1e-14 && cur > 1e-12 * scale) table.non_cauchy = true;
    }
    return table;
}

}  // namespace sbl
