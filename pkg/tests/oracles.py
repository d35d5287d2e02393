"""Brute-force reference implementations used only by the tests.

Nothing here shares code with the library: loops over explicit indices,
general (non-Hermitian) eigensolvers, and hand-written kets.
"""

import itertools
import math

import numpy as np

R2 = 1 / math.sqrt(2)


def ket(i, j):
    """Product ket |i>_a|j>_b with 1-based levels, row 4(i-1)+(j-1)."""
    v = np.zeros(16, dtype=complex)
    v[4 * (i - 1) + (j - 1)] = 1
    return v


def loop_partial_trace(rho, dims, keep):
    dims = list(dims)
    keep = sorted(keep)
    kdims = [dims[k] for k in keep]
    n_out = int(np.prod(kdims))
    out = np.zeros((n_out, n_out), dtype=complex)
    strides = [int(np.prod(dims[k + 1:])) for k in range(len(dims))]
    kstrides = [int(np.prod(kdims[k + 1:])) for k in range(len(kdims))]
    for r in itertools.product(*[range(d) for d in dims]):
        for c in itertools.product(*[range(d) for d in dims]):
            if any(r[f] != c[f] for f in range(len(dims)) if f not in keep):
                continue
            row = sum(r[f] * s for f, s in zip(range(len(dims)), strides))
            col = sum(c[f] * s for f, s in zip(range(len(dims)), strides))
            orow = sum(r[f] * s for f, s in zip(keep, kstrides))
            ocol = sum(c[f] * s for f, s in zip(keep, kstrides))
            out[orow, ocol] += rho[row, col]
    return out


def loop_partial_transpose(rho, dims, factor):
    dims = list(dims)
    n = int(np.prod(dims))
    strides = [int(np.prod(dims[k + 1:])) for k in range(len(dims))]
    out = np.zeros((n, n), dtype=complex)
    for r in itertools.product(*[range(d) for d in dims]):
        for c in itertools.product(*[range(d) for d in dims]):
            r2, c2 = list(r), list(c)
            r2[factor], c2[factor] = c[factor], r[factor]
            row = sum(a * s for a, s in zip(r, strides))
            col = sum(a * s for a, s in zip(c, strides))
            row2 = sum(a * s for a, s in zip(r2, strides))
            col2 = sum(a * s for a, s in zip(c2, strides))
            out[row2, col2] = rho[row, col]
    return out


M = np.zeros((6, 6))
for r, (c, s) in enumerate([(4, 1), (3, -1), (2, 1), (1, -1), (0, 1), (5, 1)]):
    M[r, c] = s


def brute_concurrence(rho6):
    """Square roots of the eigenvalues of the plain product rho rho~."""
    tilde = M @ np.conj(rho6) @ M
    w = np.linalg.eigvals(rho6 @ tilde)
    lam = np.sort(np.sqrt(np.clip(w.real, 0, None)))[::-1]
    return max(0.0, lam[0] - lam[1:].sum()), lam


def pure_concurrence(coords):
    """|psi^T M psi| for a pure pair vector."""
    return abs(coords @ M @ coords)


def shannon(w, log=np.log):
    w = np.asarray(w, dtype=float)
    w = w[w > 1e-15]
    return float(-(w * log(w)).sum())


# Basis table, written out by hand as product-space kets.
TABLE = {
    (2, 2): R2 * (ket(1, 2) - ket(2, 1)),
    (2, 1): R2 * (ket(1, 3) - ket(3, 1)),
    (2, 0): 0.5 * (ket(2, 3) + ket(1, 4) - ket(4, 1) - ket(3, 2)),
    (2, -1): R2 * (ket(2, 4) - ket(4, 2)),
    (2, -2): R2 * (ket(3, 4) - ket(4, 3)),
    (0, 0): 0.5 * (ket(3, 2) - ket(2, 3) + ket(1, 4) - ket(4, 1)),
}


def pfaffian_concurrence(psi16):
    """4|Pf(w)| for the antisymmetric coefficient matrix of a pure two-fermion ket."""
    w = np.asarray(psi16).reshape(4, 4)
    pf = w[0, 1] * w[2, 3] - w[0, 2] * w[1, 3] + w[0, 3] * w[1, 2]
    return 4 * abs(pf)


def eig_entropy(rho, log=np.log):
    return shannon(np.linalg.eigvals(rho).real, log)
