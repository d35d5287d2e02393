"""Two-fermion and tripartite Hilbert spaces for spin-3/2 particles.

Single-particle levels are numbered 1..4 for m_s = 3/2, 1/2, -1/2, -3/2.
The six antisymmetric two-fermion states are ordered

    |2,2>, |2,1>, |2,0>, |2,-1>, |2,-2>, i|0,0>

and the sixth coordinate of every pair vector is the amplitude of ``i|0,0>``
rather than ``|0,0>``. Use :func:`pair_state` to build vectors from plain
``|j,m>`` amplitudes; it performs the conversion.

Product kets ``|i>_a |j>_b`` live at row ``4*(i-1) + (j-1)``; the environment
factor is last, so the tripartite index is ``2*row + mu``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence, Tuple

import numpy as np

from fdl.numerics import EIGEN_FLOOR, NotPositiveError, hermitian_eigen, hermitize

N_LEVELS = 4
N_PAIR = 6
N_ENV = 2
TRIPARTITE_DIMS = (N_LEVELS, N_LEVELS, N_ENV)

SUPPORT_TOL = 1e-10
TRACE_TOL = 1e-12
NORM_TOL = 1e-9

# Phase carried by the sixth basis vector relative to |0,0>.
ZERO_ZERO_PHASE = 1j

LABELS: Tuple[Tuple[int, int], ...] = ((2, 2), (2, 1), (2, 0), (2, -1), (2, -2), (0, 0))

# Product-space expansions of |j,m> (not yet multiplied by the sixth phase),
# as {(i, j): coefficient} with 1-based single-particle levels.
_R2 = 1 / np.sqrt(2)
_EXPANSIONS = {
    (2, 2): {(1, 2): _R2, (2, 1): -_R2},
    (2, 1): {(1, 3): _R2, (3, 1): -_R2},
    (2, 0): {(2, 3): 0.5, (1, 4): 0.5, (4, 1): -0.5, (3, 2): -0.5},
    (2, -1): {(2, 4): _R2, (4, 2): -_R2},
    (2, -2): {(3, 4): _R2, (4, 3): -_R2},
    (0, 0): {(3, 2): 0.5, (2, 3): -0.5, (1, 4): 0.5, (4, 1): -0.5},
}


class SupportLeak(ValueError):
    """State has weight outside the antisymmetric subspace."""


def label_index(j: int, m: int) -> int:
    """Zero-based position of ``|j,m>`` in the pair basis."""
    try:
        return LABELS.index((j, m))
    except ValueError:
        raise ValueError(f"|{j},{m}> is not an antisymmetric spin-3/2 pair state") from None


def product_index(i: int, j: int) -> int:
    """Zero-based row of ``|i>_a |j>_b`` for 1-based levels."""
    if not (1 <= i <= N_LEVELS and 1 <= j <= N_LEVELS):
        raise ValueError(f"single-particle levels must lie in 1..4, got ({i}, {j})")
    return N_LEVELS * (i - 1) + (j - 1)


@lru_cache(maxsize=None)
def _embedding(phase: complex) -> np.ndarray:
    v = np.zeros((N_LEVELS * N_LEVELS, N_PAIR), dtype=complex)
    for k, label in enumerate(LABELS):
        for (i, j), c in _EXPANSIONS[label].items():
            v[product_index(i, j), k] = c
    v[:, 5] *= phase
    v.setflags(write=False)
    return v


def build_embedding() -> np.ndarray:
    """The 16x6 isometry from the pair basis into the 4x4 product space."""
    return _embedding(ZERO_ZERO_PHASE)


def swap_operator() -> np.ndarray:
    """Permutation exchanging the two fermion factors, 16x16."""
    p = np.zeros((16, 16))
    for i in range(1, 5):
        for j in range(1, 5):
            p[product_index(j, i), product_index(i, j)] = 1.0
    return p


def antisymmetric_projector() -> np.ndarray:
    v = build_embedding()
    return v @ v.conj().T


def pair_state(amplitudes: Mapping[Tuple[int, int], complex], normalize: bool = False) -> np.ndarray:
    """Pair-basis coordinates from amplitudes of the plain ``|j,m>`` states.

    ``{(2, 0): a, (0, 0): b}`` means ``a|2,0> + b|0,0>``. The ``|0,0>``
    amplitude is divided by the sixth-basis phase. Unless ``normalize`` is
    set, the state must already have unit norm within 1e-9.
    """
    psi = np.zeros(N_PAIR, dtype=complex)
    for (j, m), amp in amplitudes.items():
        k = label_index(j, m)
        psi[k] += amp / ZERO_ZERO_PHASE if k == 5 else amp
    return check_pair_vector(psi, normalize=normalize)


def check_pair_vector(psi, normalize: bool = False) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (N_PAIR,):
        raise ValueError(f"pair state must have 6 coordinates, got {psi.shape[0]}")
    norm = np.linalg.norm(psi)
    if normalize:
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return psi / norm
    if abs(norm**2 - 1) > NORM_TOL:
        raise ValueError(f"pair state is not normalized (|psi|^2 = {norm**2:.12g})")
    return psi


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, PSD, unit-trace matrix together with its factor dimensions.

    Construction validates the matrix. Deviations from Hermiticity below
    1e-12 are symmetrized away; larger ones raise.
    """

    matrix: np.ndarray
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid factor dimensions {self.dims}")
        m = hermitize(self.matrix)
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        tr = np.trace(m).real
        if abs(tr - 1) > TRACE_TOL:
            raise ValueError(f"trace is {tr:.15g}, expected 1")
        w = hermitian_eigen(m).eigenvalues
        if w[0] < EIGEN_FLOOR:
            raise NotPositiveError(f"density operator has eigenvalue {w[0]:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_vector(cls, psi, dims: Sequence[int]) -> "DensityOperator":
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        return cls(np.outer(psi, psi.conj()), tuple(dims))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigen(self.matrix).eigenvalues

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))


def as_density(rho, dims=None) -> DensityOperator:
    if isinstance(rho, DensityOperator):
        if dims is not None and tuple(dims) != rho.dims:
            raise ValueError(f"expected dims {tuple(dims)}, got {rho.dims}")
        return rho
    rho = np.asarray(rho)
    if dims is None:
        dims = (rho.shape[0],)
    return DensityOperator(rho, tuple(dims))


@dataclass(frozen=True, eq=False)
class TripartiteState:
    """Pure state of fermion a, fermion b and the environment (4x4x2)."""

    coords: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.coords, dtype=complex).reshape(-1)
        if psi.shape != (32,):
            raise ValueError(f"tripartite state needs 32 coordinates, got {psi.shape[0]}")
        norm2 = np.vdot(psi, psi).real
        if abs(norm2 - 1) > NORM_TOL:
            raise ValueError(f"tripartite state is not normalized (|psi|^2 = {norm2:.12g})")
        proj = np.kron(antisymmetric_projector(), np.eye(N_ENV))
        leak = np.max(np.abs(proj @ psi - psi))
        if leak > SUPPORT_TOL:
            raise SupportLeak(f"fermion part leaves the antisymmetric subspace by {leak:.3e}")
        psi.setflags(write=False)
        object.__setattr__(self, "coords", psi)

    @classmethod
    def from_branches(cls, branches: Sequence[np.ndarray]) -> "TripartiteState":
        """Build ``sum_mu (V phi_mu) (x) |mu>_E`` from pair-basis vectors."""
        v = build_embedding()
        psi = sum(np.kron(v @ np.asarray(phi, dtype=complex), np.eye(N_ENV)[mu])
                  for mu, phi in enumerate(branches))
        return cls(psi)

    def density(self) -> DensityOperator:
        return DensityOperator.from_vector(self.coords, TRIPARTITE_DIMS)


def embed_state(psi) -> np.ndarray:
    """Product-space (16-dim) coordinates of a pair-basis vector."""
    return build_embedding() @ check_pair_vector(psi)


def embed_density(rho6) -> DensityOperator:
    rho6 = as_density(rho6, (N_PAIR,))
    v = build_embedding()
    return DensityOperator(v @ rho6.matrix @ v.conj().T, (N_LEVELS, N_LEVELS))


def reduce_to_antisymmetric(rho16) -> DensityOperator:
    """Compress a 4x4 two-fermion density operator to the 6-dim pair basis.

    Raises SupportLeak if ``rho16`` has weight outside the antisymmetric
    subspace, which means something upstream broke exchange symmetry.
    """
    rho16 = as_density(rho16, (N_LEVELS, N_LEVELS))
    proj = antisymmetric_projector()
    m = rho16.matrix
    leak = np.max(np.abs(proj @ m @ proj - m))
    if leak > SUPPORT_TOL:
        raise SupportLeak(f"density operator leaks out of the antisymmetric subspace by {leak:.3e}")
    v = build_embedding()
    return DensityOperator(v.conj().T @ m @ v, (N_PAIR,))


def _check_factors(dims, factors):
    for f in factors:
        if not isinstance(f, (int, np.integer)) or not 0 <= f < len(dims):
            raise ValueError(f"invalid factor index {f!r} for dims {dims}")


def partial_trace(rho, keep: Sequence[int]) -> DensityOperator:
    """Trace out every factor not listed in ``keep``.

    The kept factors stay in their original order regardless of the order
    given in ``keep``.
    """
    rho = as_density(rho)
    dims = rho.dims
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one factor")
    _check_factors(dims, keep)
    k = len(dims)
    t = rho.matrix.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:k])
    col = list(letters[k:2 * k])
    for f in range(k):
        if f not in keep:
            col[f] = row[f]
    out = "".join(row[f] for f in keep) + "".join(col[f] for f in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    kept_dims = tuple(dims[f] for f in keep)
    n = int(np.prod(kept_dims))
    return DensityOperator(reduced.reshape(n, n), kept_dims)


def partial_transpose(rho, factor: int) -> np.ndarray:
    """Transpose the indices of one tensor factor. Result may be non-PSD."""
    rho = as_density(rho)
    dims = rho.dims
    _check_factors(dims, [factor])
    k = len(dims)
    t = rho.matrix.reshape(dims + dims)
    axes = list(range(2 * k))
    axes[factor], axes[k + factor] = axes[k + factor], axes[factor]
    return t.transpose(axes).reshape(rho.n, rho.n)


def exchange_symmetry_holds(rho16) -> bool:
    """True when ``rho16`` is exchange invariant and supported on the
    antisymmetric subspace, both to within 1e-10."""
    m = as_density(rho16, (N_LEVELS, N_LEVELS)).matrix
    p = swap_operator()
    proj = antisymmetric_projector()
    return bool(np.max(np.abs(p @ m @ p - m)) <= SUPPORT_TOL
                and np.max(np.abs(proj @ m @ proj - m)) <= SUPPORT_TOL)


def symmetrized_expectation(a_list, b_list, rho) -> float:
    """Expectation of ``1/2 sum_i (A_i x I + I x A_i) x B_i`` in a 4x4x2 state.

    For exchange-symmetric states this equals ``Tr[(sum_i A_i x B_i) rho_aE]``;
    the agreement is checked and a RuntimeError raised if it fails.
    """
    if len(a_list) != len(b_list):
        raise ValueError("A and B lists must have equal length")
    rho = as_density(rho, TRIPARTITE_DIMS)
    eye4 = np.eye(N_LEVELS)
    a_list = [hermitize(a) for a in a_list]
    b_list = [hermitize(b) for b in b_list]
    for a, b in zip(a_list, b_list):
        if a.shape != (N_LEVELS, N_LEVELS) or b.shape != (N_ENV, N_ENV):
            raise ValueError("A_i must be 4x4 and B_i 2x2")
    obs = sum(0.5 * np.kron(np.kron(a, eye4) + np.kron(eye4, a), b)
              for a, b in zip(a_list, b_list))
    value = np.trace(obs @ rho.matrix).real

    rho16 = partial_trace(rho, [0, 1]).matrix
    p = swap_operator()
    if np.max(np.abs(p @ rho16 @ p - rho16)) <= SUPPORT_TOL:
        rho_ae = partial_trace(rho, [0, 2]).matrix
        local = sum(np.kron(a, b) for a, b in zip(a_list, b_list))
        reduced = np.trace(local @ rho_ae).real
        scale = max(1.0, sum(np.abs(a).max() * np.abs(b).max() for a, b in zip(a_list, b_list)))
        if abs(value - reduced) > 1e-12 * scale:
            raise RuntimeError(f"symmetrized expectation {value} disagrees with reduced {reduced}")
    return float(value)
