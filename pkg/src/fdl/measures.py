"""Entanglement quantifiers for the fermion pair and its environment.

Entropies use natural logarithms unless ``base=2`` is requested.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from fdl.hilbert import (
    N_ENV,
    N_LEVELS,
    N_PAIR,
    DensityOperator,
    TripartiteState,
    as_density,
    partial_trace,
    partial_transpose,
    reduce_to_antisymmetric,
)
from fdl.numerics import EIGEN_FLOOR, clamp_spectrum, hermitian_eigen, product_sqrt_spectrum

SQUARE_TOL = 1e-10
ENTROPY_CUTOFF = 1e-15
RESIDUAL_CONVENTION = "assumes-zero-C_aE"

# Real part of the antiunitary conjugation D = M kappa on pair coordinates.
CONJUGATION = np.array(
    [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
    ],
    dtype=float,
)


def _clamp_unit(x, what):
    """Clamp a squared measure into [0, 1]; reject values further than 1e-10 outside."""
    x = float(x)
    if x < -SQUARE_TOL or x > 1 + SQUARE_TOL:
        raise ValueError(f"{what} = {x:.3e} outside [0, 1]")
    return min(max(x, 0.0), 1.0)


def _log(x, base):
    if base in ("e", math.e):
        return np.log(x)
    if base == 2:
        return np.log2(x)
    raise ValueError(f"log base must be e or 2, got {base!r}")


def spin_flip(rho6) -> np.ndarray:
    """``D rho D^-1 = M rho* M`` in the pair basis."""
    m = as_density(rho6, (N_PAIR,)).matrix
    return CONJUGATION @ m.conj() @ CONJUGATION


def concurrence(rho6) -> float:
    """Fermionic concurrence ``max(0, l1 - l2 - ... - l6)`` of a pair state.

    The ``l_i`` are the descending square roots of the eigenvalues of
    ``rho @ spin_flip(rho)``. Coordinates must follow the pair-basis
    convention where the sixth entry is the amplitude of ``i|0,0>``.
    """
    rho6 = as_density(rho6, (N_PAIR,))
    lam = product_sqrt_spectrum(rho6.matrix, spin_flip(rho6))
    return float(min(max(0.0, lam[0] - lam[1:].sum()), 1.0))


def c_one_vs_rest(rho_f) -> float:
    """Entanglement between one fermion and everything else.

    ``sqrt(2d/(d-2) * (1/2 - Tr rho_f^2))`` with ``d = 4``; zero for a
    Slater determinant, one for the maximally mixed single-particle state.
    """
    rho_f = as_density(rho_f, (N_LEVELS,))
    d = N_LEVELS
    c2 = (2 * d / (d - 2)) * (0.5 - rho_f.purity())
    return math.sqrt(_clamp_unit(c2, "C^2_a|Eb"))


def c_env_vs_pair(rho_ab, rho_env=None) -> float:
    """``sqrt(2 (1 - Tr rho_ab^2))``, valid when the tripartite state is pure.

    If the environment reduction is passed as well, both purities must agree.
    """
    rho_ab = as_density(rho_ab)
    purity = rho_ab.purity()
    if rho_env is not None:
        other = as_density(rho_env).purity()
        if abs(purity - other) > 1e-12:
            raise ValueError(f"purities differ ({purity} vs {other}); global state is not pure")
    return math.sqrt(_clamp_unit(2 * (1 - purity), "C^2_E|ab"))


def negativity(rho_fe) -> float:
    """Sum of the magnitudes of negative partial-transpose eigenvalues.

    Both choices of transposed factor are evaluated and must agree.
    """
    rho_fe = as_density(rho_fe)
    if len(rho_fe.dims) != 2:
        raise ValueError(f"negativity needs a bipartite state, got dims {rho_fe.dims}")
    values = []
    for factor in (0, 1):
        w = hermitian_eigen(partial_transpose(rho_fe, factor)).eigenvalues
        values.append(float(np.abs(w[w < EIGEN_FLOOR]).sum()))
    if abs(values[0] - values[1]) > 1e-12:
        raise RuntimeError(f"negativity depends on the transposed factor: {values}")
    return max(values)


def von_neumann_entropy(rho, base="e") -> float:
    w = clamp_spectrum(as_density(rho).eigenvalues())
    w = w[w > ENTROPY_CUTOFF]
    return float(-(w * _log(w, base)).sum())


def renyi_entropy(rho, alpha, base="e") -> float:
    """Renyi entropy of order ``alpha >= 1``.

    ``alpha == 1`` gives the von Neumann entropy and ``alpha == inf`` the
    min-entropy ``-log(lambda_max)``.
    """
    if not alpha >= 1:
        raise ValueError(f"Renyi order must be >= 1, got {alpha}")
    if alpha == 1:
        return von_neumann_entropy(rho, base)
    w = clamp_spectrum(as_density(rho).eigenvalues())
    if math.isinf(alpha):
        s = -_log(w.max(), base)
    else:
        w = w[w > ENTROPY_CUTOFF]
        s = _log(np.sum(w**alpha), base) / (1 - alpha)
    return float(s) + 0.0


def epsilon(rho_f) -> float:
    """Excess single-particle entropy ``S(rho_f) - ln 2`` in nats.

    For reductions of antisymmetric states this is never negative; a value
    below -1e-10 indicates a broken symmetry upstream.
    """
    eps = von_neumann_entropy(rho_f) - math.log(2)
    if eps < -SQUARE_TOL:
        raise ValueError(f"epsilon = {eps:.3e} < 0; rho_f is not a two-fermion reduction")
    return max(eps, 0.0)


def q_indicator(rho_pair, rho_f, alpha, base="e", n_fermions=2) -> float:
    """``S(rho_f) - S(rho_pair) - log N`` for Renyi order ``alpha``.

    A positive value certifies that the fermion state is entangled.
    """
    return (renyi_entropy(rho_f, alpha, base) - renyi_entropy(rho_pair, alpha, base)
            - float(_log(n_fermions, base)))


def residuals(c2_a_eb, c2_ab, c2_ae, c2_e_ab, c2_eb=None) -> Tuple[float, float]:
    """Monogamy residuals ``R_a`` and ``R_E``.

    ``c2_eb`` defaults to ``c2_ae``: the two fermion-environment tangles are
    equal by exchange symmetry.
    """
    if c2_eb is None:
        c2_eb = c2_ae
    for name, v in (("c2_a_eb", c2_a_eb), ("c2_ab", c2_ab), ("c2_ae", c2_ae),
                    ("c2_e_ab", c2_e_ab), ("c2_eb", c2_eb)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name} = {v} outside [0, 1]")
    return c2_a_eb - c2_ae - c2_ab, c2_e_ab - c2_ae - c2_eb


def separable_decomposition(rho_fe, tol=1e-10) -> Optional[List[Tuple[float, np.ndarray, np.ndarray]]]:
    """Try to write a 4x2 state as ``sum_k w_k |u_k><u_k| (x) sigma_k``.

    Works when the environment blocks of ``rho_fe`` commute, so that one
    fermion basis diagonalizes all of them. Returns ``(w_k, u_k, sigma_k)``
    triples whose sum reproduces ``rho_fe`` within ``tol``, or None when no
    such decomposition is found. None does not imply entanglement.
    """
    rho_fe = as_density(rho_fe, (N_LEVELS, N_ENV))
    t = rho_fe.matrix.reshape(N_LEVELS, N_ENV, N_LEVELS, N_ENV)
    x = [[t[:, a, :, b] for b in range(N_ENV)] for a in range(N_ENV)]
    herm = [x[0][0], x[1][1], x[0][1] + x[1][0], 1j * (x[0][1] - x[1][0])]
    for i, h in enumerate(herm):
        for g in herm[i + 1:]:
            if np.max(np.abs(h @ g - g @ h)) > tol:
                return None
    # generic weights avoid accidental degeneracies
    mix = sum(c * h for c, h in zip((1.0, math.sqrt(2), math.sqrt(3), math.sqrt(5)), herm))
    u = hermitian_eigen(mix).eigenvectors
    terms = []
    recon = np.zeros_like(rho_fe.matrix)
    for k in range(N_LEVELS):
        uk = u[:, k]
        sigma = np.array([[uk.conj() @ x[a][b] @ uk for b in range(N_ENV)] for a in range(N_ENV)])
        w = sigma.trace().real
        if w <= tol:
            continue
        sigma = sigma / w
        if hermitian_eigen(sigma).eigenvalues[0] < -tol:
            return None
        terms.append((w, uk, sigma))
        recon += w * np.kron(np.outer(uk, uk.conj()), sigma)
    if np.max(np.abs(recon - rho_fe.matrix)) > tol:
        return None
    return terms


@dataclass(frozen=True)
class EntanglementReport:
    C2_ab: float
    C2_E_ab: float
    C2_a_Eb: float
    negativity_aE: float
    epsilon: float
    Q1: float
    Q2: float
    Q_inf: float
    R_a: Optional[float]
    R_E: Optional[float]
    log_base: object = "e"
    residual_convention: str = RESIDUAL_CONVENTION


def reductions(psi: TripartiteState):
    """Pair, single-fermion, fermion-environment and environment reductions."""
    rho = psi.density()
    rho_ab = reduce_to_antisymmetric(partial_trace(rho, [0, 1]))
    return rho_ab, partial_trace(rho, [0]), partial_trace(rho, [0, 2]), partial_trace(rho, [2])


def report(psi: TripartiteState, log_base="e") -> EntanglementReport:
    """Every entanglement quantity for a pure fermion-fermion-environment state.

    Residuals take ``C_aE = 0`` and are only reported when ``rho_aE`` has
    zero negativity and an explicit product decomposition is found;
    otherwise they are None.
    """
    rho_ab, rho_a, rho_ae, rho_e = reductions(psi)
    c2_ab = _clamp_unit(concurrence(rho_ab) ** 2, "C^2_ab")
    c2_e_ab = _clamp_unit(c_env_vs_pair(rho_ab, rho_e) ** 2, "C^2_E|ab")
    c2_a_eb = _clamp_unit(c_one_vs_rest(rho_a) ** 2, "C^2_a|Eb")
    neg = negativity(rho_ae)
    r_a = r_e = None
    if neg == 0.0 and separable_decomposition(rho_ae) is not None:
        r_a, r_e = residuals(c2_a_eb, c2_ab, 0.0, c2_e_ab)
    q = [q_indicator(rho_ab, rho_a, alpha, log_base) for alpha in (1, 2, math.inf)]
    return EntanglementReport(
        C2_ab=c2_ab,
        C2_E_ab=c2_e_ab,
        C2_a_Eb=c2_a_eb,
        negativity_aE=neg,
        epsilon=epsilon(rho_a),
        Q1=q[0],
        Q2=q[1],
        Q_inf=q[2],
        R_a=r_a,
        R_E=r_e,
        log_base=log_base,
    )
