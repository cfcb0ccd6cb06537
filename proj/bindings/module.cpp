// Python face of the library: plain functions over plain data, returning
// numpy arrays and dicts. Model input is (eta, alpha, coupling, modes) with
// modes as (energy, weight, tag) tuples and coupling as one amplitude row
// per power.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "sbl/fock.hpp"
#include "sbl/model.hpp"
#include "sbl/onebody.hpp"
#include "sbl/pullthrough.hpp"
#include "sbl/spectra.hpp"

namespace py = pybind11;
using namespace sbl;

namespace {

using ModeRow = std::tuple<double, double, std::string>;

ModeSet make_modes(const std::vector<ModeRow>& rows) {
    std::vector<Mode> modes;
    modes.reserve(rows.size());
    for (const auto& [energy, weight, tag] : rows) {
        if (tag != "discrete" && tag != "essential")
            throw ModelError("mode tag must be 'discrete' or 'essential'");
        modes.push_back(Mode{energy, weight,
                             tag == "discrete" ? ModeTag::discrete : ModeTag::essential});
    }
    return ModeSet(modes);
}

ModelParams make_params(double eta, const std::vector<double>& alpha,
                        const std::vector<std::vector<Complex>>& coupling,
                        const std::vector<ModeRow>& modes) {
    ModelParams params{eta, alpha, CouplingFamily(coupling), make_modes(modes)};
    params.validate();
    return params;
}

}  // namespace

PYBIND11_MODULE(sblab, m) {
    m.doc() = "Truncated Fock-space spin-boson models: operators, spectra, "
              "and ground-state diagnostics";

    m.def(
        "basis_dim",
        [](int mode_count, int n_max) { return FockBasis(mode_count, n_max).dim(); },
        py::arg("mode_count"), py::arg("n_max"),
        "Dimension of the occupation basis with at most n_max total quanta.");

    m.def(
        "fiber_matrix",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes, int sign, int n_max) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            FockBasis basis(static_cast<int>(params.modes.size()), n_max);
            return build_fiber(params, basis, sign).dense();
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        py::arg("sign"), py::arg("n_max"),
        "Dense fiber operator with parity coefficient sign*eta.");

    m.def(
        "full_matrix",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes, int n_max) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            FockBasis basis(static_cast<int>(params.modes.size()), n_max);
            SpinFockBasis spin(basis);
            return build_full(params, spin).dense();
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        py::arg("n_max"),
        "Dense spin (x) Fock Hamiltonian, spin-major indexing.");

    m.def(
        "ground_energies",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes, int n_max) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            Cutoffs cut;
            cut.n_max = n_max;
            GroundStateReport g = ground_state_analysis(params, cut);
            return py::make_tuple(g.e_full, g.e_minus, g.e_plus);
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        py::arg("n_max"),
        "Ground energies (full, minus fiber, plus fiber) at one cutoff.");

    m.def(
        "hypothesis_report",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            HypothesisReport report = validate_hypotheses(params);
            py::list checks;
            for (const auto& status : report.checks)
                checks.append(py::make_tuple(status.pass, status.reason));
            py::dict out;
            out["checks"] = checks;
            out["leading"] = std::vector<int>(report.leading.begin(), report.leading.end());
            out["all_pass"] = report.all_pass();
            return out;
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        "Structural checks on the coupling family, as (pass, reason) pairs.");

    m.def(
        "pull_through_relative_residual",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes, int n_max) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            Cutoffs cut;
            cut.n_max = n_max;
            return pull_through_residual(params, cut, 1).relative;
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        py::arg("n_max"),
        "Relative first-order pull-through residual of the fiber ground state.");

    m.def(
        "decoupled_spectrum",
        [](double eta, const std::vector<double>& alpha,
           const std::vector<std::vector<Complex>>& coupling,
           const std::vector<ModeRow>& modes, const std::vector<int>& coupled_modes,
           int n_max, int free_quanta_cap) {
            ModelParams params = make_params(eta, alpha, coupling, modes);
            return decoupled_spectrum(params, coupled_modes, n_max, free_quanta_cap);
        },
        py::arg("eta"), py::arg("alpha"), py::arg("coupling"), py::arg("modes"),
        py::arg("coupled_modes"), py::arg("n_max"), py::arg("free_quanta_cap"),
        "Plus-fiber spectrum assembled from free-mode sectors.");
}
