"""Weyl-operator reference via scipy's matrix exponential.

The library builds exp(a^dag(h) - a(h)) from a Hermitian eigendecomposition;
this script uses scipy.linalg.expm as an algorithmically independent oracle
and freezes the first coefficients of W(h) applied to the vacuum.
"""

import numpy as np
import scipy.linalg

from fockref import annihilation, basis, emit, exponential_vector


def main():
    h = [0.3 + 0.0j]
    w = [1.0]
    states, index = basis(1, 12)
    a = annihilation(states, index, h, w)
    k = a.conj().T - a
    wop = scipy.linalg.expm(k)
    col = wop[:, 0]
    print("# W(h) vacuum column, one mode, h=0.3, n_max=12")
    emit("weyl_vacuum_col6", col[:6])
    # coherent-state identity: W(h) vacuum = e^{-|h|^2/2} eps(h)
    eps = exponential_vector(states, h, w)
    ref = np.exp(-0.5 * abs(h[0]) ** 2) * eps
    print("# max |W(h)Omega - e^{-|h|^2/2} eps(h)| = %.3e" % np.abs(col - ref).max())


if __name__ == "__main__":
    main()
