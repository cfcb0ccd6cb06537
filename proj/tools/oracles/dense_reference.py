"""Reference spectra for the pinned test instances, by dense diagonalization.

Output is frozen into the C++ unit and acceptance tests. Instances:

  Q  two modes, quartic coupling, eta=0.3           (model/spectra tests)
  V  one mode, linear coupling, eta=0   ("van Hove") closed form cross-check
  D  coupled+free mode, linear coupling, eta=0.3    (decoupling identity)
  L  two modes, dim 1953, linear coupling           (solver cross-validation)
  C  two modes, quartic, eta=0.2                    (convergence/pull-through)
"""

import numpy as np

from fockref import (basis, dgamma, emit, exponential_vector, fiber,
                     full_hamiltonian, parity)


def eigvals(h):
    return np.linalg.eigvalsh(h)


def instance_q():
    omega = [1.0, 1.7]
    w = [1.0, 0.5]
    eta = 0.3
    alpha = [0.3, 0.2, 0.1, 0.15]
    f = [[0.30, 0.20], [0.50, -0.10], [0.40, 0.25], [0.40, 0.25]]
    states, index = basis(2, 6)
    fp = fiber(states, index, eta, alpha, f, omega, w, +1)
    fm = fiber(states, index, eta, alpha, f, omega, w, -1)
    h = full_hamiltonian(states, index, eta, alpha, f, omega, w)
    print("# instance Q (M=2, n_max=6, dim %d)" % len(states))
    emit("q_fiber_plus_low6", eigvals(fp)[:6])
    emit("q_fiber_minus_low6", eigvals(fm)[:6])
    emit("q_full_low6", eigvals(h)[:6])
    ev, vec = np.linalg.eigh(fm)
    psi = vec[:, 0]
    n_op = dgamma(states, [1.0, 1.0])
    emit("q_ground_mean_n", [float((psi.conj() @ n_op @ psi).real)])
    # same instance two grades deeper, for cutoff-schedule anchors
    states8, index8 = basis(2, 8)
    fm8 = fiber(states8, index8, eta, alpha, f, omega, w, -1)
    emit("q_nmax8_fiber_minus_low2", eigvals(fm8)[:2])


def instance_v():
    omega = [1.0]
    w = [1.0]
    alpha1 = 0.4
    states, index = basis(1, 20)
    fm = fiber(states, index, 0.0, [alpha1, 0.0], [[1.0], [0.0]], omega, w, -1)
    ev, vec = np.linalg.eigh(fm)
    psi = vec[:, 0]
    n_op = dgamma(states, [1.0])
    mean_n = float((psi.conj() @ n_op @ psi).real)
    mean_n2 = float((psi.conj() @ n_op @ n_op @ psi).real)
    print("# instance V: ground energy target -alpha1^2 = %.17e" % (-alpha1 ** 2))
    emit("v_ground_energy", [ev[0]])
    emit("v_mean_n", [mean_n])
    emit("v_mean_n2", [mean_n2])
    assert abs(ev[0] + alpha1 ** 2) < 1e-12
    assert abs(mean_n - alpha1 ** 2) < 1e-9


def instance_d():
    # mode 0 coupled, mode 1 free (f vanishes there)
    omega = [1.0, 0.7]
    w = [1.0, 1.0]
    eta = 0.3
    alpha = [0.5, 0.0]
    f = [[1.0, 0.0], [0.0, 0.0]]
    states, index = basis(2, 6)
    fp = fiber(states, index, eta, alpha, f, omega, w, +1)
    vals = eigvals(fp)
    print("# instance D (dim %d)" % len(states))
    emit("d_fiber_plus_all", vals)


def instance_l():
    omega = [1.0, 1.31]
    w = [1.0, 0.6]
    eta = 0.25
    alpha = [0.35, 0.0]
    f = [[0.4, 0.3], [0.0, 0.0]]
    states, index = basis(2, 61)
    fm = fiber(states, index, eta, alpha, f, omega, w, -1)
    vals = eigvals(fm)
    print("# instance L (dim %d)" % len(states))
    emit("l_fiber_minus_low5", vals[:5])


def instance_c():
    omega = [1.0, 1.3]
    w = [0.7, 0.3]
    eta = 0.2
    alpha = [0.2, 0.15, 0.0, 0.08]
    f = [[0.30, 0.20], [0.25, -0.15], [0.20, 0.10], [0.20, 0.10]]
    for n_max in (6, 12):
        states, index = basis(2, n_max)
        fm = fiber(states, index, eta, alpha, f, omega, w, -1)
        vals = eigvals(fm)
        emit("c_nmax%d_fiber_minus_low2" % n_max, vals[:2])


def main():
    np.set_printoptions(precision=17)
    instance_q()
    instance_v()
    instance_d()
    instance_l()
    instance_c()


if __name__ == "__main__":
    main()
