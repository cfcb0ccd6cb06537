#pragma once

// Reference values computed with an independent numpy/scipy implementation
// (tools/oracles/*.py) and frozen here. Tests compare against these numbers
// rather than re-deriving them, so a regression in the C++ operators cannot
// hide behind a matching bug in the expectation.

#include <array>

namespace frozen {

// Two-mode quartic instance "Q": omega=(1.0,1.7), w=(1.0,0.5), eta=0.3,
// alpha=(0.3,0.2,0.1,0.15), f1=(0.30,0.20), f2=(0.50,-0.10),
// f3=f4=(0.40,0.25), n_max=6.  tools/oracles/dense_reference.py
inline constexpr std::array<double, 6> q_fiber_plus_low6 = {
    3.40495880161493403e-01, 9.03125244371911329e-01, 1.46681508747802103e+00,
    2.60555877293938876e+00, 3.18084383748393806e+00, 3.29177534054117427e+00};

inline constexpr std::array<double, 6> q_fiber_minus_low6 = {
    -2.45039371697146624e-01, 1.45859933813929277e+00, 2.04889466264194819e+00,
    2.08494821147087217e+00,  2.63205848462106973e+00, 3.18063317877704321e+00};

inline constexpr std::array<double, 6> q_full_low6 = {
    -2.45039371697147734e-01, 3.40495880161493347e-01, 9.03125244371909108e-01,
    1.45859933813929632e+00,  1.46681508747802014e+00, 2.04889466264195130e+00};

inline constexpr double q_ground_mean_n = 7.50258711892605196e-03;

inline constexpr std::array<double, 2> q_nmax8_fiber_minus_low2 = {
    -2.45039265429606079e-01, 1.45861318031266074e+00};

// Single-mode instance "V": omega=w=(1.0), eta=0, alpha=(0.4,0.0),
// f1=(1.0), n_max=20.  Closed form: ground energy -alpha1^2.
// tools/oracles/dense_reference.py
inline constexpr double v_ground_energy = -1.60000000000000003e-01;
inline constexpr double v_mean_n = 1.59999999999999892e-01;
inline constexpr double v_mean_n2 = 1.85599999999999876e-01;

// Decoupled instance "D": modes omega=(1.0,0.7), w=(1,1), eta=0.3,
// alpha=(0.5,0.0), f1=(1,0), n_max=6; mode 1 carries no coupling.
// Full +fiber spectrum (28 values).  tools/oracles/dense_reference.py
inline constexpr std::array<double, 28> d_fiber_plus_all = {
    -1.23985000325744874e-01, 2.34380456242406554e-01, 7.67374406670821796e-01,
    1.27608734743845909e+00,  1.43647504149096061e+00, 1.63456275403233042e+00,
    1.65870088229496071e+00,  2.16873999192836031e+00, 2.55683636449437168e+00,
    2.68718109157044127e+00,  2.86012625200876425e+00, 2.88571819769806126e+00,
    3.05660188679434253e+00,  3.09754852236786027e+00, 3.38515299360600341e+00,
    3.63073672909608813e+00,  3.71085227800831818e+00, 4.08943782970804648e+00,
    4.50000000000000355e+00,  4.51275129453297641e+00, 4.91783500017761721e+00,
    4.94339811320566280e+00,  5.31182934585747279e+00, 5.38208217933347477e+00,
    5.81587316425085454e+00,  6.24487284373234353e+00, 6.66932014398863959e+00,
    7.08950988979610841e+00};

// Lanczos instance "L": omega=(1.0,1.31), w=(1.0,0.6), eta=0.25,
// alpha=(0.35,0.0), f1=(0.4,0.3), n_max=61 (dim 1953).
// tools/oracles/dense_reference.py
inline constexpr std::array<double, 5> l_fiber_minus_low5 = {
    -2.66806387713888316e-01, 1.18223119296333912e+00, 1.51080438060661582e+00,
    1.77890809776527092e+00,  2.07093293341012519e+00};

// Cutoff instance "C": omega=(1.0,1.3), w=(0.7,0.3), eta=0.2,
// alpha=(0.2,0.15,0.0,0.08), f1=(0.30,0.20), f2=(0.25,-0.15),
// f3=f4=(0.20,0.10).  tools/oracles/dense_reference.py
inline constexpr std::array<double, 2> c_nmax6_fiber_minus_low2 = {
    -1.94304497147194138e-01, 1.21463235829680771e+00};
inline constexpr std::array<double, 2> c_nmax12_fiber_minus_low2 = {
    -1.94304497147500310e-01, 1.21463235863509422e+00};

// Interaction lower bound C(alpha) = n * min(0, polynomial minima).
// tools/oracles/lower_bound_reference.py
inline constexpr double a1_bound = -2.0;                      // X^4 - 2X^2
inline constexpr double a2_bound = -6.25000000000000382e-03;  // all-positive quartic
inline constexpr double a3_bound = -3.20361328124999845e-01;  // sextic mix
inline constexpr double a4_bound = 0.0;                       // nonneg combination

// Weyl operator column W(h)|0> for one mode, h=0.3, w=1, n_max=12; the first
// six amplitudes (imaginary parts all zero).  tools/oracles/weyl_reference.py
inline constexpr std::array<double, 6> weyl_vacuum_col6 = {
    9.55997481833099960e-01, 2.86799244549929944e-01, 6.08393071981303199e-02,
    1.05376771164452637e-02, 1.58065156746679011e-03, 2.12066661215840150e-04};

// First-order pull-through relative residuals for instance C along the
// schedule 6, 8, 10, 12.  tools/oracles/pullthrough_reference.py
inline constexpr double c_pt1_rel_nmax6 = 8.97787082154550275e-06;
inline constexpr double c_pt1_rel_nmax8 = 2.36104325332841301e-07;
inline constexpr double c_pt1_rel_nmax10 = 8.59814583311513568e-09;
inline constexpr double c_pt1_rel_nmax12 = 1.86227089009193498e-10;

// Second-order pull-through relative residual for instance C at n_max=6.
// tools/oracles/pullthrough_reference.py
inline constexpr double c_pt2_rel_nmax6 = 1.36517900558118076e-04;

}  // namespace frozen
