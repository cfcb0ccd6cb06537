"""Independent dense reference implementation of the truncated-Fock machinery.

Everything here is built straight from the defining formulas with numpy,
deliberately sharing no code with the C++ library. Test files freeze numbers
printed by the scripts in this directory; rerun them to regenerate.

Conventions (must stay in sync with the library):
  * basis states are occupation tuples n with sum(n) <= n_max, ordered by
    total occupation first, then lexicographically; index 0 is the vacuum
  * a(g) = sum_k conj(g_k sqrt(w_k)) a_k, so quadrature weights live inside
    the amplitudes and Fock-level inner products are plain sums
  * fiber(sign) = sign*eta*parity + dGamma(omega) + sum_i alpha_i field(f_i)^i
  * full H on spin (tensor) Fock, spin-major, spin basis ordered (up, down)
    with sigma_z = diag(+1, -1)
"""

import itertools
import math

import numpy as np


def basis(m, n_max):
    states = []
    for total in range(n_max + 1):
        grade = [s for s in itertools.product(range(total + 1), repeat=m)
                 if sum(s) == total]
        states.extend(sorted(grade))
    index = {s: i for i, s in enumerate(states)}
    return states, index


def mode_annihilator(states, index, k):
    d = len(states)
    a = np.zeros((d, d), dtype=complex)
    for j, s in enumerate(states):
        if s[k] > 0:
            t = list(s)
            t[k] -= 1
            a[index[tuple(t)], j] = math.sqrt(s[k])
    return a


def annihilation(states, index, g, w):
    acc = np.zeros((len(states), len(states)), dtype=complex)
    for k in range(len(g)):
        acc += np.conj(g[k] * math.sqrt(w[k])) * mode_annihilator(states, index, k)
    return acc


def field(states, index, g, w):
    a = annihilation(states, index, g, w)
    return a + a.conj().T


def dgamma(states, b):
    return np.diag([sum(n * bb for n, bb in zip(s, b)) for s in states]).astype(complex)


def parity(states):
    return np.diag([(-1.0) ** sum(s) for s in states]).astype(complex)


def fiber(states, index, eta, alpha, f, omega, w, sign):
    h = sign * eta * parity(states) + dgamma(states, omega)
    for i, fi in enumerate(f, start=1):
        h += alpha[i - 1] * np.linalg.matrix_power(field(states, index, fi, w), i)
    return h


def full_hamiltonian(states, index, eta, alpha, f, omega, w):
    d = len(states)
    sz = np.diag([1.0, -1.0]).astype(complex)
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    one2 = np.eye(2, dtype=complex)
    h = eta * np.kron(sz, np.eye(d)) + np.kron(one2, dgamma(states, omega))
    for i, fi in enumerate(f, start=1):
        spin = sx if i % 2 == 1 else one2
        h += alpha[i - 1] * np.kron(spin, np.linalg.matrix_power(field(states, index, fi, w), i))
    return h


def exponential_vector(states, g, w):
    c = [gk * math.sqrt(wk) for gk, wk in zip(g, w)]
    out = np.zeros(len(states), dtype=complex)
    for j, s in enumerate(states):
        v = 1.0 + 0.0j
        for nk, ck in zip(s, c):
            v *= ck ** nk / math.sqrt(math.factorial(nk))
        out[j] = v
    return out


def fmt(x):
    if isinstance(x, complex):
        return "{%.17e, %.17e}" % (x.real, x.imag)
    return "%.17e" % x


def emit(name, values):
    print("%s = {%s}" % (name, ", ".join(fmt(v) for v in values)))
