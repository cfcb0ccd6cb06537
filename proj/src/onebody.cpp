#include "sbl/onebody.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sbl {

ModeSet::ModeSet(std::vector<Mode> modes, std::string label)
    : modes_(std::move(modes)), label_(std::move(label)) {
    if (modes_.empty()) throw ModelError("mode set must contain at least one mode");
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        std::ostringstream os;
        if (!(modes_[k].energy > 0)) {
            os << "mode " << k << ": energy must be positive, got " << modes_[k].energy;
            throw ModelError(os.str());
        }
        if (!(modes_[k].weight > 0)) {
            os << "mode " << k << ": weight must be positive, got " << modes_[k].weight;
            throw ModelError(os.str());
        }
    }
}

std::vector<double> ModeSet::energies() const {
    std::vector<double> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(m.energy);
    return out;
}

std::vector<double> ModeSet::weights() const {
    std::vector<double> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(m.weight);
    return out;
}

CouplingFamily::CouplingFamily(std::vector<std::vector<Complex>> vectors)
    : vectors_(std::move(vectors)) {
    if (vectors_.empty() || vectors_.size() % 2 != 0)
        throw ModelError("coupling family needs a positive even number of vectors");
    for (const auto& v : vectors_)
        if (v.size() != vectors_.front().size())
            throw DimensionError("coupling vectors must share one length");
}

const std::vector<Complex>& CouplingFamily::vec(std::size_t i) const {
    if (i < 1 || i > vectors_.size())
        throw DimensionError("coupling index out of range");
    return vectors_[i - 1];
}

void ModelParams::validate() const {
    if (alpha.size() != coupling.count())
        throw ModelError("alpha length must equal the number of coupling vectors");
    if (coupling.mode_count() != modes.size())
        throw DimensionError("coupling vectors and mode set disagree on mode count");
}

bool HypothesisReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Complex inner_product(const std::vector<Complex>& g, const std::vector<Complex>& h,
                      const ModeSet& modes) {
    if (g.size() != modes.size() || h.size() != modes.size())
        throw DimensionError("inner_product arguments must match the mode count");
    Complex acc = 0;
    for (std::size_t k = 0; k < modes.size(); ++k)
        acc += std::conj(g[k]) * h[k] * modes.mode(k).weight;
    return acc;
}

std::set<int> leading_terms(const CouplingFamily& coupling) {
    std::set<int> out;
    const int top = static_cast<int>(coupling.count());
    for (int i = 2; i <= top; ++i) {
        bool fresh = true;
        for (int j = i + 1; j <= top; ++j)
            if (coupling.vec(i) == coupling.vec(j)) {
                fresh = false;
                break;
            }
        if (fresh) out.insert(i);
    }
    return out;
}

Masses masses(const ModeSet& modes) {
    Masses out;
    out.m = std::numeric_limits<double>::infinity();
    out.m_ess = std::numeric_limits<double>::infinity();
    for (const auto& mode : modes.modes()) {
        out.m = std::min(out.m, mode.energy);
        if (mode.tag == ModeTag::essential) out.m_ess = std::min(out.m_ess, mode.energy);
    }
    return out;
}

std::optional<std::vector<Complex>> phase_function(const CouplingFamily& coupling) {
    const std::size_t m = coupling.mode_count();
    double scale = 0;
    for (std::size_t i = 1; i <= coupling.count(); ++i)
        for (std::size_t k = 0; k < m; ++k)
            scale = std::max(scale, std::abs(coupling.amplitude(i, k)));
    const double tol = 1e-12 * std::max(scale, 1e-300);

    std::vector<Complex> h(m, Complex(1, 0));
    for (std::size_t k = 0; k < m; ++k) {
        Complex pivot = 0;
        for (std::size_t i = 1; i <= coupling.count(); ++i) {
            Complex v = coupling.amplitude(i, k);
            if (std::abs(v) > std::abs(pivot)) pivot = v;
        }
        if (std::abs(pivot) == 0.0) continue;
        h[k] = std::conj(pivot) / std::abs(pivot);
        // The phase is only determined modulo pi; canonicalize the sign so
        // that real couplings get the identity phase.
        if (h[k].real() < 0.0) h[k] = -h[k];
        for (std::size_t i = 1; i <= coupling.count(); ++i)
            if (std::abs(std::imag(h[k] * coupling.amplitude(i, k))) > tol)
                return std::nullopt;
    }
    return h;
}

namespace {

std::string join_indices(const std::set<int>& s) {
    std::ostringstream os;
    bool first = true;
    for (int i : s) {
        if (!first) os << ",";
        os << i;
        first = false;
    }
    return os.str();
}

}  // namespace

HypothesisReport validate_hypotheses(const ModelParams& params) {
    params.validate();
    HypothesisReport report;
    report.leading = leading_terms(params.coupling);
    report.phase = phase_function(params.coupling);
    const int n = params.coupling.order();

    // 1: leading terms even with positive coefficients (alpha_2 may be zero),
    //    mode energies positive.
    {
        auto& c = report.checks[0];
        c.pass = true;
        for (int i : report.leading) {
            if (i % 2 != 0) {
                c.pass = false;
                c.reason = "leading term " + std::to_string(i) + " is odd";
                break;
            }
            double a = params.alpha[i - 1];
            if (i == 2 ? a < 0 : a <= 0) {
                c.pass = false;
                c.reason = "coefficient alpha_" + std::to_string(i) +
                           (i == 2 ? " must be nonnegative" : " must be positive") +
                           " for leading term";
                break;
            }
        }
        for (const auto& mode : params.modes.modes())
            if (!(mode.energy > 0)) {
                c.pass = false;
                c.reason = "nonpositive mode energy";
            }
        if (c.pass) c.reason = "leading terms {" + join_indices(report.leading) + "} even, coefficients admissible";
    }

    // 2: per-mode reality of conj(f_i(k)) f_j(k). This is a sufficient
    //    condition, stricter than reality of the weighted forms themselves,
    //    which could also arise from cancellation across modes.
    {
        auto& c = report.checks[1];
        c.pass = true;
        const std::size_t count = params.coupling.count();
        for (std::size_t i = 1; i <= count && c.pass; ++i)
            for (std::size_t j = i; j <= count && c.pass; ++j)
                for (std::size_t k = 0; k < params.modes.size(); ++k) {
                    Complex p = std::conj(params.coupling.amplitude(i, k)) *
                                params.coupling.amplitude(j, k);
                    if (std::abs(std::imag(p)) > 1e-12 * std::abs(p)) {
                        c.pass = false;
                        c.reason = "off-phase product between couplings " + std::to_string(i) +
                                   " and " + std::to_string(j) + " at mode " + std::to_string(k);
                        break;
                    }
                }
        if (c.pass) c.reason = "per-mode products real to 1e-12 (sufficient per-mode check)";
    }

    // 3: order at most 2, or positive dispersion bottom plus check 2.
    {
        auto& c = report.checks[2];
        double m = masses(params.modes).m;
        if (n <= 2) {
            c.pass = true;
            c.reason = "order n <= 2";
        } else if (m > 0 && report.checks[1].pass) {
            c.pass = true;
            c.reason = "m > 0 and per-mode reality holds";
        } else {
            c.pass = false;
            c.reason = m > 0 ? "per-mode reality fails for order n > 2"
                             : "dispersion bottom not positive for order n > 2";
        }
    }

    // 4: order at most 2, or a common phase function exists.
    {
        auto& c = report.checks[3];
        if (n <= 2) {
            c.pass = true;
            c.reason = "order n <= 2";
        } else if (report.phase.has_value()) {
            c.pass = true;
            c.reason = "phase function exists";
        } else {
            c.pass = false;
            c.reason = "no common per-mode phase";
        }
    }

    // 5: inverse-dispersion profiles are automatically square-summable on a
    //    finite grid with positive energies.
    {
        auto& c = report.checks[4];
        c.pass = true;
        c.reason = "finite mode set with positive energies";
    }

    return report;
}

}  // namespace sbl
