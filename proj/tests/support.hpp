#pragma once

// Shared instance builders for the test suite. The pinned instances match
// the ones used by tools/oracles, so frozen_reference.hpp applies to them.

#include <complex>
#include <random>
#include <vector>

#include "sbl/onebody.hpp"

namespace support {

using sbl::Complex;
using sbl::CouplingFamily;
using sbl::Mode;
using sbl::ModelParams;
using sbl::ModeSet;
using sbl::ModeTag;

// Builds complex coupling rows from real amplitudes; brace-initializing
// std::complex vectors from doubles directly is ambiguous.
inline std::vector<std::vector<Complex>> rows(const std::vector<std::vector<double>>& real_rows) {
    std::vector<std::vector<Complex>> out;
    out.reserve(real_rows.size());
    for (const auto& row : real_rows) {
        std::vector<Complex> c;
        c.reserve(row.size());
        for (double x : row) c.emplace_back(x, 0.0);
        out.push_back(std::move(c));
    }
    return out;
}

// Two-mode quartic instance "Q" (n_max = 6 in the frozen references).
inline ModelParams quartic_instance() {
    ModeSet modes({Mode{1.0, 1.0, ModeTag::discrete}, Mode{1.7, 0.5, ModeTag::essential}},
                  "quartic");
    CouplingFamily coupling(rows({{0.30, 0.20}, {0.50, -0.10}, {0.40, 0.25}, {0.40, 0.25}}));
    return ModelParams{0.3, {0.3, 0.2, 0.1, 0.15}, coupling, modes};
}

// Single-mode instance "V" with unit dispersion and linear coupling; the
// ground energy has the closed form -alpha_1^2 * |f_1|^2 / omega.
inline ModelParams van_hove_instance() {
    ModeSet modes({Mode{1.0, 1.0, ModeTag::essential}}, "van-hove");
    CouplingFamily coupling(rows({{1.0}, {0.0}}));
    return ModelParams{0.0, {0.4, 0.0}, coupling, modes};
}

// Two modes, only the first coupled; the second (0.7, essential) is free.
inline ModelParams decoupled_instance() {
    ModeSet modes({Mode{1.0, 1.0, ModeTag::discrete}, Mode{0.7, 1.0, ModeTag::essential}},
                  "decoupled");
    CouplingFamily coupling(rows({{1.0, 0.0}, {0.0, 0.0}}));
    return ModelParams{0.3, {0.5, 0.0}, coupling, modes};
}

// Two-mode linear instance "L" used at large cutoffs for Krylov tests.
inline ModelParams lanczos_instance() {
    ModeSet modes({Mode{1.0, 1.0, ModeTag::discrete}, Mode{1.31, 0.6, ModeTag::discrete}},
                  "krylov");
    CouplingFamily coupling(rows({{0.4, 0.3}, {0.0, 0.0}}));
    return ModelParams{0.25, {0.35, 0.0}, coupling, modes};
}

// Two-mode quartic instance "C" used for cutoff and pull-through studies.
inline ModelParams cutoff_instance() {
    ModeSet modes({Mode{1.0, 0.7, ModeTag::discrete}, Mode{1.3, 0.3, ModeTag::essential}},
                  "cutoff");
    CouplingFamily coupling(rows({{0.30, 0.20}, {0.25, -0.15}, {0.20, 0.10}, {0.20, 0.10}}));
    return ModelParams{0.2, {0.2, 0.15, 0.0, 0.08}, coupling, modes};
}

// Eight-mode linear instance used for the large sparse eigenvalue run.
inline ModelParams wide_instance() {
    std::vector<Mode> modes;
    std::vector<double> f1, f2;
    for (int k = 0; k < 8; ++k) {
        modes.push_back(Mode{1.0 + 0.13 * k + 0.007 * k * k, 1.0, ModeTag::discrete});
        f1.push_back(0.15);
        f2.push_back(0.0);
    }
    return ModelParams{0.25, {0.3, 0.0}, CouplingFamily(rows({f1, f2})), ModeSet(modes, "wide")};
}

// Random instance that satisfies the structural hypotheses: leading terms
// even with positive amplitudes, real couplings. Order n is 1 or 2.
inline ModelParams random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mode_count_dist(1, 3);
    std::uniform_int_distribution<int> order_dist(1, 2);
    std::uniform_real_distribution<double> energy_dist(0.5, 2.0);
    std::uniform_real_distribution<double> weight_dist(0.3, 1.5);
    std::uniform_real_distribution<double> eta_dist(-0.6, 0.6);
    std::uniform_real_distribution<double> amp_dist(-0.5, 0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int mode_count = mode_count_dist(rng);
    const int order = order_dist(rng);

    std::vector<Mode> modes;
    for (int k = 0; k < mode_count; ++k) {
        ModeTag tag = unit(rng) < 0.5 ? ModeTag::discrete : ModeTag::essential;
        modes.push_back(Mode{energy_dist(rng), weight_dist(rng), tag});
    }

    auto fresh = [&] {
        std::vector<double> v;
        for (int k = 0; k < mode_count; ++k) v.push_back(amp_dist(rng));
        return v;
    };

    std::vector<std::vector<double>> f;
    std::vector<double> alpha;
    if (order == 1) {
        f.push_back(fresh());
        f.push_back(fresh());
        alpha = {std::uniform_real_distribution<double>(-0.4, 0.4)(rng),
                 std::uniform_real_distribution<double>(0.0, 0.4)(rng)};
    } else {
        std::vector<double> top = fresh();
        std::vector<double> f1 = fresh();
        std::vector<double> f3 = top;
        double a1 = std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
        double a3 = std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
        double a4 = std::uniform_real_distribution<double>(0.05, 0.4)(rng);
        double a2;
        std::vector<double> f2;
        if (unit(rng) < 0.5) {
            f2 = top;
            a2 = std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
        } else {
            f2 = fresh();
            a2 = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
        }
        f = {f1, f2, f3, top};
        alpha = {a1, a2, a3, a4};
    }

    return ModelParams{eta_dist(rng), alpha, CouplingFamily(rows(f)), ModeSet(modes, "random")};
}

}  // namespace support
