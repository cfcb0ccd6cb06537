"""Reference values for the even-polynomial interaction lower bound.

For coupling weights alpha the bound constant is n*C0, with C0 the smallest
global minimum over the polynomial family

    alpha_{i_b} X^{i_b} + sum_{j=2}^{i_b-1} atilde_j X^j,
    atilde_j in {0, alpha_j},  i_b ranging over even indices with alpha_i > 0.

Global minima here via numpy.roots on the derivative (independent of the
C++ root-finding path).
"""

import itertools

import numpy as np


def poly_min(coeffs_desc):
    # coeffs_desc: numpy poly1d descending coefficients
    p = np.poly1d(coeffs_desc)
    crit = [r.real for r in p.deriv().roots if abs(r.imag) < 1e-12]
    return min(p(x) for x in crit + [0.0])


def bound(alpha):
    two_n = len(alpha)
    n = two_n // 2
    k = [i for i in range(2, two_n + 1, 2) if alpha[i - 1] > 0]
    best = 0.0
    for ib in k:
        lower = list(range(2, ib))
        for mask in itertools.product([0, 1], repeat=len(lower)):
            coeffs = np.zeros(ib + 1)
            coeffs[0] = alpha[ib - 1]  # descending: X^{ib} first
            for pick, j in zip(mask, lower):
                if pick:
                    coeffs[ib - j] = alpha[j - 1]
            best = min(best, poly_min(coeffs))
    return n * best, best


def main():
    cases = {
        "a1": [0.0, -2.0, 0.0, 1.0],
        "a2": [0.3, 0.2, 0.1, 0.15],
        "a3": [0.0, 0.1, -0.3, 0.2, 0.05, 0.4],
        "a4": [0.2, 0.15, 0.0, 0.08],
    }
    for name, alpha in cases.items():
        c, c0 = bound(alpha)
        print("%s_bound = %.17e   # C0 = %.17e" % (name, c, c0))


if __name__ == "__main__":
    main()
