"""Reference for the ground-state mode-resolved annihilation identity.

For psi the ground state of fiber(-) with energy E, the first-order identity

    (A1 psi)(k) = -(fiber(+) - E + omega_k)^{-1} sum_j j alpha_j f_j(k)
                   field(f_j)^{j-1} psi,          (A1 psi)(k) = a_k psi / sqrt(w_k)

holds up to truncation error. This script evaluates both sides densely with
numpy solves and freezes the relative aggregate residual

    sqrt(sum_k w_k |lhs_k - rhs_k|^2) / sqrt(sum_k w_k |lhs_k|^2)

for the convergence instance C, plus the second-order residual at n_max=6.
"""

import math

import numpy as np

from fockref import basis, field, fiber, mode_annihilator


OMEGA = [1.0, 1.3]
W = [0.7, 0.3]
ETA = 0.2
ALPHA = [0.2, 0.15, 0.0, 0.08]
F = [[0.30, 0.20], [0.25, -0.15], [0.20, 0.10], [0.20, 0.10]]


def first_order_residual(n_max):
    states, index = basis(2, n_max)
    fm = fiber(states, index, abs(ETA), ALPHA, F, OMEGA, W, -1)
    fp = fiber(states, index, abs(ETA), ALPHA, F, OMEGA, W, +1)
    ev, vec = np.linalg.eigh(fm)
    e0, psi = ev[0], vec[:, 0]
    num = 0.0
    den = 0.0
    for k in range(2):
        a_k = mode_annihilator(states, index, k)
        lhs = a_k @ psi / math.sqrt(W[k])
        rhs_src = np.zeros_like(psi)
        for j, fj in enumerate(F, start=1):
            if ALPHA[j - 1] == 0.0:
                continue
            phi = field(states, index, fj, W)
            rhs_src += j * ALPHA[j - 1] * fj[k] * (np.linalg.matrix_power(phi, j - 1) @ psi)
        rhs = -np.linalg.solve(fp - e0 * np.eye(len(states)) + OMEGA[k] * np.eye(len(states)), rhs_src)
        num += W[k] * np.linalg.norm(lhs - rhs) ** 2
        den += W[k] * np.linalg.norm(lhs) ** 2
    return math.sqrt(num / den)


def second_order_residual(n_max):
    states, index = basis(2, n_max)
    fm = fiber(states, index, abs(ETA), ALPHA, F, OMEGA, W, -1)
    ev, vec = np.linalg.eigh(fm)
    e0, psi = ev[0], vec[:, 0]
    ann = [mode_annihilator(states, index, k) for k in range(2)]
    a1 = [ann[k] @ psi / math.sqrt(W[k]) for k in range(2)]
    phi_pow = {}
    for j, fj in enumerate(F, start=1):
        phi = field(states, index, fj, W)
        phi_pow[j] = [np.linalg.matrix_power(phi, p) for p in range(j)]
    num = 0.0
    den = 0.0
    eye = np.eye(len(states))
    for k in range(2):
        for q in range(k, 2):
            lhs = ann[k] @ ann[q] @ psi / math.sqrt(W[k] * W[q])
            rhs_src = np.zeros_like(psi)
            for j, fj in enumerate(F, start=1):
                if ALPHA[j - 1] == 0.0:
                    continue
                rhs_src += j * ALPHA[j - 1] * (
                    fj[k] * (phi_pow[j][j - 1] @ a1[q]) + fj[q] * (phi_pow[j][j - 1] @ a1[k]))
                if j >= 2:
                    rhs_src += j * (j - 1) * ALPHA[j - 1] * fj[k] * fj[q] * (phi_pow[j][j - 2] @ psi)
            rhs = -np.linalg.solve(fm - e0 * eye + (OMEGA[k] + OMEGA[q]) * eye, rhs_src)
            mult = 1.0 if k == q else 2.0
            num += mult * W[k] * W[q] * np.linalg.norm(lhs - rhs) ** 2
            den += mult * W[k] * W[q] * np.linalg.norm(lhs) ** 2
    return math.sqrt(num / den)


def main():
    for n_max in (6, 8, 10, 12):
        print("c_pt1_rel_nmax%d = %.17e" % (n_max, first_order_residual(n_max)))
    print("c_pt2_rel_nmax6 = %.17e" % second_order_residual(6))


if __name__ == "__main__":
    main()
