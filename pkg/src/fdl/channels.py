"""Amplitude- and phase-damping channels on the six-dimensional pair space.

Both channels couple the fermion pair to a two-level environment initially
in ``|0>_E``. They are stored as two Kraus operators ``K_0 = <0|U|0>_E`` and
``K_1 = <1|U|0>_E`` acting on pair-basis coordinates.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from fdl.hilbert import N_PAIR, DensityOperator, TripartiteState, as_density, check_pair_vector

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KrausChannel:
    name: str
    p: float
    kraus_ops: Tuple[np.ndarray, np.ndarray]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus_ops)
        for k in ops:
            if k.shape != (N_PAIR, N_PAIR):
                raise ValueError(f"Kraus operators must be 6x6, got {k.shape}")
            k.setflags(write=False)
        object.__setattr__(self, "kraus_ops", ops)
        dev = self.completeness_error()
        if dev > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators are not complete (deviation {dev:.3e})")

    def completeness_error(self) -> float:
        s = sum(k.conj().T @ k for k in self.kraus_ops)
        return float(np.max(np.abs(s - np.eye(N_PAIR))))


def _check_p(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"decoherence parameter p must lie in [0, 1], got {p}")
    return p


def adc(p: float) -> KrausChannel:
    """Amplitude damping: ``|2,m>|0> -> sqrt(1-p)|2,m>|0> + sqrt(p)|2,m-1>|1>``
    for m = 2..-1, while ``|2,-2>`` and ``|0,0>`` are left untouched."""
    p = _check_p(p)
    k0 = np.diag([np.sqrt(1 - p)] * 4 + [1.0, 1.0]).astype(complex)
    k1 = np.zeros((N_PAIR, N_PAIR), dtype=complex)
    for k in range(4):
        k1[k + 1, k] = np.sqrt(p)
    return KrausChannel("adc", p, (k0, k1))


def pdc(p: float) -> KrausChannel:
    """Phase damping: every j=2 state leaks ``sqrt(p)`` into ``|1>_E``
    without changing ``m``; the j=0 singlet is dark."""
    p = _check_p(p)
    j2 = np.diag([1.0] * 5 + [0.0])
    j0 = np.diag([0.0] * 5 + [1.0])
    return KrausChannel("pdc", p, (np.sqrt(1 - p) * j2 + j0, np.sqrt(p) * j2))


CHANNELS = {"adc": adc, "pdc": pdc}


def apply(ch: KrausChannel, rho6) -> DensityOperator:
    m = as_density(rho6, (N_PAIR,)).matrix
    out = sum(k @ m @ k.conj().T for k in ch.kraus_ops)
    return DensityOperator(out, (N_PAIR,))


def dilate(ch: KrausChannel, psi0) -> TripartiteState:
    """Pure fermion-fermion-environment state ``sum_mu (K_mu psi0) |mu>_E``."""
    psi0 = check_pair_vector(psi0)
    return TripartiteState.from_branches([k @ psi0 for k in ch.kraus_ops])
