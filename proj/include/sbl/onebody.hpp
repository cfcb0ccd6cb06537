#pragma once

#include <array>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sbl/errors.hpp"

namespace sbl {

using Complex = std::complex<double>;

enum class ModeTag { discrete, essential };

struct Mode {
    double energy = 0;
    double weight = 1;
    ModeTag tag = ModeTag::discrete;
};

// Discretized one-boson space. The dispersion acts by multiplication with
// energy omega_k on mode k; each mode carries the quadrature weight w_k of
// its cell and a discrete/essential tag used for spectral-threshold checks.
class ModeSet {
public:
    explicit ModeSet(std::vector<Mode> modes, std::string label = "");

    std::size_t size() const { return modes_.size(); }
    const Mode& mode(std::size_t k) const { return modes_[k]; }
    const std::vector<Mode>& modes() const { return modes_; }
    const std::string& label() const { return label_; }

    std::vector<double> energies() const;
    std::vector<double> weights() const;

private:
    std::vector<Mode> modes_;
    std::string label_;
};

// Coupling vectors f_1..f_{2n}, one complex amplitude per mode. Amplitudes
// are raw function values; quadrature weights enter only through inner
// products and operator construction.
class CouplingFamily {
public:
    explicit CouplingFamily(std::vector<std::vector<Complex>> vectors);

    int order() const { return static_cast<int>(vectors_.size() / 2); }
    std::size_t count() const { return vectors_.size(); }
    std::size_t mode_count() const { return vectors_.front().size(); }

    // 1-based access matching the index conventions of the model formulas.
    const std::vector<Complex>& vec(std::size_t i) const;
    Complex amplitude(std::size_t i, std::size_t k) const { return vec(i)[k]; }

private:
    std::vector<std::vector<Complex>> vectors_;
};

struct ModelParams {
    double eta = 0;
    std::vector<double> alpha;  // alpha[i-1] multiplies the i-th power term
    CouplingFamily coupling;
    ModeSet modes;

    void validate() const;
};

struct HypothesisStatus {
    bool pass = false;
    std::string reason;
};

struct HypothesisReport {
    std::array<HypothesisStatus, 5> checks;
    std::set<int> leading;
    std::optional<std::vector<Complex>> phase;

    const HypothesisStatus& check(int i) const { return checks.at(i - 1); }
    bool all_pass() const;
};

// Weighted sesquilinear inner product sum_k conj(g_k) h_k w_k,
// conjugate-linear in the first argument.
Complex inner_product(const std::vector<Complex>& g, const std::vector<Complex>& h,
                      const ModeSet& modes);

// Indices i in {2..2n} whose coupling vector differs from every vector with
// a larger index; equality is exact sequence equality. The top index is
// always a member.
std::set<int> leading_terms(const CouplingFamily& coupling);

struct Masses {
    double m = 0;
    double m_ess = 0;  // +infinity when no mode is tagged essential
};
Masses masses(const ModeSet& modes);

// Per-mode unit phase h with h_k f_i(k) real for every coupling vector, when
// one exists; absence is a valid answer.
std::optional<std::vector<Complex>> phase_function(const CouplingFamily& coupling);

HypothesisReport validate_hypotheses(const ModelParams& params);

}  // namespace sbl
