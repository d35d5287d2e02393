"""Closed-form tangles for the amplitude- and phase-damping families.

Every evaluator returns ``Tangles(C2_ab, C2_E_ab, C2_a_Eb)`` clamped into
[0, 1]. Where the published closed form holds only for a restricted phase
of the amplitudes, the default evaluator uses the general expression and
``paper_as_printed=True`` reproduces the published one unchanged.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

NORM_TOL = 1e-9


class Tangles(NamedTuple):
    C2_ab: float
    C2_E_ab: float
    C2_a_Eb: Optional[float]


def _check_p(p):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")


def _check_norm(x, y, names):
    n = abs(x) ** 2 + abs(y) ** 2
    if abs(n - 1) > NORM_TOL:
        raise ValueError(f"|{names[0]}|^2 + |{names[1]}|^2 = {n:.12g}, expected 1")


def _clamp(x):
    return None if x is None else min(max(float(x), 0.0), 1.0)


def _tangles(c2_ab, c2_e_ab, c2_a_eb):
    return Tangles(_clamp(c2_ab), _clamp(c2_e_ab), _clamp(c2_a_eb))


def adc_psi0(p) -> Tangles:
    """Amplitude damping of ``|2,0>``."""
    _check_p(p)
    return _tangles((1 - p) ** 2, 4 * p * (1 - p), 1 - p**2)


def adc_superposition(p, alpha, beta, paper_as_printed=False) -> Tangles:
    """Amplitude damping of ``alpha|2,1> + beta|2,-1>``.

    The published pair tangle uses ``alpha beta* + alpha* beta`` and so only
    holds when ``alpha beta*`` is real and nonnegative; the default uses
    ``2|alpha beta|``, which is exact for any phases.
    """
    _check_p(p)
    _check_norm(alpha, beta, ("alpha", "beta"))
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    if paper_as_printed:
        cross = (alpha * np.conj(beta) + np.conj(alpha) * beta).real
    else:
        cross = 2 * abs(alpha * beta)
    c2_ab = ((1 - p) * cross - p * a2) ** 2
    c2_a_eb = 2 - 4 * p * a2 * b2 - (1 + (1 - p) ** 2) * a2**2 - 2 * (p + (1 - p) ** 2) * b2**2
    return _tangles(c2_ab, 4 * p * (1 - p), c2_a_eb)


def zeta(p, delta, gamma):
    d2, g2 = abs(delta) ** 2, abs(gamma) ** 2
    return d2**2 + g2**2 + 2 * (1 - p) * d2 * g2


def pdc_general(p, delta, gamma, paper_as_printed=False) -> Tangles:
    """Phase damping of ``delta|2,0> + i gamma|0,0>``.

    With ``paper_as_printed`` the published zeta expressions are returned
    verbatim; they agree with the dynamics for real ``delta, gamma``. The
    default expressions hold for arbitrary complex amplitudes.
    """
    _check_p(p)
    _check_norm(delta, gamma, ("delta", "gamma"))
    z = zeta(p, delta, gamma)
    d2, g2 = abs(delta) ** 2, abs(gamma) ** 2
    c2_e_ab = 2 * (1 - z)
    if paper_as_printed:
        c2_ab = z - math.sqrt(max(z**2 - (z - 2 * p * d2 * g2), 0.0))
        diff = np.conj(delta) * gamma - delta * np.conj(gamma)
        c2_a_eb = (1 - (1 - p) * diff**2).real
        return _tangles(c2_ab, c2_e_ab, c2_a_eb)
    # Frobenius norm of the 2x2 spin-flip overlap minus twice its determinant.
    c2_ab = (abs(delta**2 * (1 - p) + gamma**2) ** 2 + d2**2 * (2 * p - p**2)
             - 2 * p * d2 * g2)
    c2_a_eb = 1 - 4 * (1 - p) * (np.conj(delta) * gamma).imag ** 2
    return _tangles(c2_ab, c2_e_ab, c2_a_eb)


def pdc_reference(p) -> Dict[str, float]:
    """The ``delta = gamma = 1/sqrt(2)`` phase-damping family.

    Besides the tangles, the fermion-environment state is separable
    (negativity 0) and both monogamy residuals equal ``p``.
    """
    _check_p(p)
    return {"C2_ab": 1 - p, "C2_E_ab": p, "C2_a_Eb": 1.0, "negativity": 0.0, "R_a": p, "R_E": p}


def pdc_separable_decomposition(p, delta=1 / math.sqrt(2), gamma=1 / math.sqrt(2)) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Two product terms ``(fermion_op, env_op)`` summing to ``rho_aE``.

    Levels 1 and 4 of the traced fermion pair with the environment vector
    ``delta|P> + i gamma|0>`` and levels 2 and 3 with
    ``delta|P> - i gamma|0>``, where ``|P> = sqrt(1-p)|0> + sqrt(p)|1>``.
    Operators are returned unnormalized so that the Kronecker sum is
    ``rho_aE`` itself.
    """
    _check_p(p)
    _check_norm(delta, gamma, ("delta", "gamma"))
    env_p = np.array([math.sqrt(1 - p), math.sqrt(p)], dtype=complex)
    env_0 = np.array([1, 0], dtype=complex)
    terms = []
    for levels, sign in (((0, 3), 1), ((1, 2), -1)):
        fermion = np.zeros((4, 4), dtype=complex)
        for lv in levels:
            fermion[lv, lv] = 0.25
        v = delta * env_p + sign * 1j * gamma * env_0
        terms.append((fermion, np.outer(v, v.conj())))
    return terms


@dataclass(frozen=True)
class CurveSet:
    """A named closed-form family, callable on ``p``."""

    family: str
    params: Dict[str, complex] = field(default_factory=dict)
    evaluator: Callable[..., Tangles] = adc_psi0

    def __call__(self, p) -> Tangles:
        return self.evaluator(p, **self.params)


FIG1 = CurveSet("adc-psi0", {}, adc_psi0)
FIG2 = CurveSet("adc-superposition", {"alpha": 1 / math.sqrt(2), "beta": 1 / math.sqrt(2)}, adc_superposition)
FIG3 = CurveSet("pdc-reference", {"delta": 1 / math.sqrt(2), "gamma": 1 / math.sqrt(2)}, pdc_general)
