"""Self-checks run by ``fdl verify``.

Each check returns a :class:`Check` with the largest deviation it saw.
Closed-form comparisons use ``tolerance()``, which defaults to 1e-10 and
can be overridden with the ``FDL_TOLERANCE`` environment variable.
"""

import math
import os
from typing import Callable, Dict, List, NamedTuple

import numpy as np
from scipy.optimize import brentq

from fdl import analytic
from fdl.channels import adc, apply, dilate, pdc
from fdl.hilbert import (
    LABELS,
    DensityOperator,
    build_embedding,
    embed_density,
    exchange_symmetry_holds,
    pair_state,
    partial_trace,
    product_index,
    reduce_to_antisymmetric,
    symmetrized_expectation,
)
from fdl.measures import (
    concurrence,
    epsilon,
    negativity,
    q_indicator,
    reductions,
    report,
    von_neumann_entropy,
)

DEFAULT_TOLERANCE = 1e-10
GRID = np.linspace(0.0, 1.0, 101)
R2 = 1 / math.sqrt(2)

FIG1 = {(2, 0): 1.0}
FIG2 = {(2, 1): R2, (2, -1): R2}
FIG3 = {(2, 0): R2, (0, 0): 1j * R2}


class Check(NamedTuple):
    name: str
    passed: bool
    max_dev: float
    detail: str = ""


def tolerance() -> float:
    return float(os.environ.get("FDL_TOLERANCE", DEFAULT_TOLERANCE))


def _reports(channel, amplitudes, grid=GRID, log_base="e"):
    psi0 = pair_state(amplitudes)
    return [report(dilate(channel(p), psi0), log_base) for p in grid]


def _max_dev(pairs):
    return max((abs(a - b) for a, b in pairs), default=0.0)


def slater_state_from_product() -> DensityOperator:
    """``(|14> - |41>)/sqrt(2)`` built in the product space and compressed."""
    psi = np.zeros(16, dtype=complex)
    psi[product_index(1, 4)] = R2
    psi[product_index(4, 1)] = -R2
    return reduce_to_antisymmetric(DensityOperator.from_vector(psi, (4, 4)))


def random_slater_mixture(rng, n_terms=None) -> DensityOperator:
    """Convex mixture of random Slater determinants, in the pair basis."""
    n_terms = n_terms or int(rng.integers(1, 5))
    v = build_embedding()
    weights = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((6, 6), dtype=complex)
    for w in weights:
        z = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
        q, _ = np.linalg.qr(z)
        phi, chi = q[:, 0], q[:, 1]
        slater = (np.kron(phi, chi) - np.kron(chi, phi)) / math.sqrt(2)
        coords = v.conj().T @ slater
        rho += w * np.outer(coords, coords.conj())
    return DensityOperator(rho / np.trace(rho).real, (6,))


def check_basis_table() -> Check:
    expected = [0, 0, 1, 0, 0, 1]
    got = [concurrence(DensityOperator.from_vector(pair_state({lab: 1}), (6,))) for lab in LABELS]
    dev = _max_dev(zip(got, expected))
    return Check("basis-table", dev <= 1e-12, dev)


def check_slater_zero() -> Check:
    rho6 = slater_state_from_product()
    via_labels = pair_state({(2, 0): R2, (0, 0): R2})
    overlap_dev = abs(abs(np.vdot(via_labels, rho6.matrix @ via_labels)) - 1)
    c = concurrence(rho6)
    s = von_neumann_entropy(partial_trace(embed_density(rho6), [0]))
    dev = max(c, abs(s - math.log(2)), overlap_dev)
    return Check("slater-zero", dev <= 1e-12, dev, f"C={c:.3e}")


def check_adc_fig1() -> Check:
    tol = tolerance()
    reps = _reports(adc, FIG1)
    pairs = []
    for p, r in zip(GRID, reps):
        t = analytic.adc_psi0(p)
        pairs += [(r.C2_ab, t.C2_ab), (r.C2_E_ab, t.C2_E_ab), (r.C2_a_Eb, t.C2_a_Eb)]
    dev = _max_dev(pairs)
    mid = reps[50].negativity_aE
    ok = dev < tol and reps[0].negativity_aE == 0 and reps[-1].negativity_aE == 0 and mid > 1e-4
    return Check("adc-fig1", ok, dev, f"N(1/2)={mid:.6f}")


def check_adc_fig2() -> Check:
    tol = tolerance()
    reps = _reports(adc, FIG2)
    pairs = []
    for p, r in zip(GRID, reps):
        t = analytic.adc_superposition(p, R2, R2)
        pairs += [(r.C2_ab, t.C2_ab), (r.C2_E_ab, t.C2_E_ab), (r.C2_a_Eb, t.C2_a_Eb)]
        pairs.append((r.C2_ab, (1 - 1.5 * p) ** 2))
        pairs.append((r.C2_a_Eb, 1 - 0.75 * p**2))
    psi0 = pair_state(FIG2)
    at_two_thirds = report(dilate(adc(2 / 3), psi0)).C2_ab
    tail = [r.C2_ab for p, r in zip(GRID, reps) if p > 2 / 3]
    increasing = all(b > a for a, b in zip(tail, tail[1:]))
    gen = _reports(adc, {(2, 1): 1.0})
    gen_dev = _max_dev((r.C2_ab, p**2) for p, r in zip(GRID, gen))
    dev = max(_max_dev(pairs), at_two_thirds, gen_dev)
    return Check("adc-fig2", dev < tol and increasing, dev)


def check_pdc_fig3() -> Check:
    tol = tolerance()
    psi0 = pair_state(FIG3)
    devs, sum_rule, neg_max, dec_dev, ok_r = [], 0.0, 0.0, 0.0, True
    for p in GRID:
        psi = dilate(pdc(p), psi0)
        r = report(psi)
        ref = analytic.pdc_reference(p)
        devs += [(r.C2_ab, ref["C2_ab"]), (r.C2_E_ab, ref["C2_E_ab"]), (r.C2_a_Eb, ref["C2_a_Eb"])]
        if r.R_a is None or r.R_E is None:
            ok_r = False
        else:
            devs += [(r.R_a, p), (r.R_E, p)]
        sum_rule = max(sum_rule, abs(r.C2_ab + r.C2_E_ab - r.C2_a_Eb))
        neg_max = max(neg_max, r.negativity_aE)
        rho_ae = reductions(psi)[2].matrix
        recon = sum(np.kron(f, e) for f, e in analytic.pdc_separable_decomposition(p))
        dec_dev = max(dec_dev, float(np.max(np.abs(recon - rho_ae))))
    dev = _max_dev(devs)
    ok = ok_r and dev < tol and neg_max < 1e-11 and dec_dev < 1e-10 and sum_rule < 1e-12
    return Check("pdc-fig3", ok, max(dev, dec_dev, sum_rule), f"max N={neg_max:.1e}")


def check_ghz_endpoint() -> Check:
    r = report(dilate(pdc(1.0), pair_state(FIG3)))
    if r.R_a is None or r.R_E is None:
        return Check("ghz-endpoint", False, math.inf, "residuals unavailable")
    dev = max(abs(r.C2_E_ab - 1), r.C2_ab, r.negativity_aE, abs(r.R_a - 1), abs(r.R_E - 1))
    return Check("ghz-endpoint", dev < tolerance(), dev)


def q_inf_closed_form(p):
    return math.log2(2 * max(p, 1 - p) / (1 + p))


def _q_fig1(p, alpha=math.inf):
    rho_ab, rho_a, _, _ = reductions(dilate(adc(p), pair_state(FIG1)))
    return q_indicator(rho_ab, rho_a, alpha, base=2)


def check_q_indicator() -> Check:
    dev = _max_dev((_q_fig1(p), q_inf_closed_form(p)) for p in GRID)
    ends = max(abs(_q_fig1(0.0) - 1), abs(_q_fig1(1.0)))
    root = brentq(_q_fig1, 0.2, 0.5, xtol=1e-14)
    ok = dev < tolerance() and ends < tolerance() and abs(root - 1 / 3) < 1e-8
    return Check("q-indicator", ok, max(dev, ends), f"root={root:.12f}")


def check_kraus_completeness() -> Check:
    dev = max(ch(p).completeness_error() for ch in (adc, pdc) for p in GRID)
    return Check("kraus-completeness", dev <= 1e-14, dev)


def check_exchange_symmetry(seed=7) -> Check:
    rng = np.random.default_rng(seed)
    inputs = [pair_state(a) for a in (FIG1, FIG2, FIG3)]
    for _ in range(5):
        z = rng.normal(size=6) + 1j * rng.normal(size=6)
        inputs.append(z / np.linalg.norm(z))
    ok = True
    for ch in (adc, pdc):
        for p in GRID:
            for psi in inputs:
                rho = DensityOperator.from_vector(psi, (6,))
                ok &= exchange_symmetry_holds(embed_density(apply(ch(p), rho)))
                rho16 = partial_trace(dilate(ch(p), psi).density(), [0, 1])
                ok &= exchange_symmetry_holds(rho16)
    return Check("exchange-symmetry", ok, 0.0)


def check_pdc_populations(seed=11) -> Check:
    rng = np.random.default_rng(seed)
    dev = 0.0
    for _ in range(5):
        z = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        rho = z @ z.conj().T
        rho = DensityOperator(rho / np.trace(rho).real, (6,))
        for p in GRID:
            out = apply(pdc(p), rho)
            dev = max(dev, float(np.max(np.abs(np.diag(out.matrix) - np.diag(rho.matrix)))))
    return Check("pdc-populations", dev <= 1e-12, dev)


def _random_hermitian(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (z + z.conj().T) / 2


def random_antisymmetric_tripartite(rng) -> DensityOperator:
    """Random mixed 4x4x2 state supported on the antisymmetric subspace."""
    v = np.kron(build_embedding(), np.eye(2))
    z = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    rho12 = z @ z.conj().T
    rho = v @ (rho12 / np.trace(rho12).real) @ v.conj().T
    return DensityOperator(rho, (4, 4, 2))


def check_observable_identity(seed=13, n=100) -> Check:
    rng = np.random.default_rng(seed)
    dev = 0.0
    for _ in range(n):
        k = int(rng.integers(1, 4))
        a_list = [_random_hermitian(rng, 4) for _ in range(k)]
        b_list = [_random_hermitian(rng, 2) for _ in range(k)]
        rho = random_antisymmetric_tripartite(rng)
        lhs = symmetrized_expectation(a_list, b_list, rho)
        rho_ae = partial_trace(rho, [0, 2]).matrix
        rhs = np.trace(sum(np.kron(a, b) for a, b in zip(a_list, b_list)) @ rho_ae).real
        dev = max(dev, abs(lhs - rhs))
    return Check("observable-identity", dev <= 1e-12, dev)


def check_q_separable(seed=17, n=1000) -> Check:
    rng = np.random.default_rng(seed)
    worst = -math.inf
    v = build_embedding()
    for _ in range(n):
        rho6 = random_slater_mixture(rng)
        rho_f = partial_trace(DensityOperator(v @ rho6.matrix @ v.conj().T, (4, 4)), [0])
        for alpha in (1, 2, math.inf):
            worst = max(worst, q_indicator(rho6, rho_f, alpha))
    return Check("q-separable-bound", worst <= 1e-10, max(worst, 0.0), f"max Q={worst:.3e}")


def _positive_set(values):
    return {i for i, q in enumerate(values) if q > 0}


def check_q_ordering() -> Check:
    reps = _reports(adc, FIG1)
    s1 = _positive_set(r.Q1 for r in reps)
    s2 = _positive_set(r.Q2 for r in reps)
    sinf = _positive_set(r.Q_inf for r in reps)
    ok = s1 <= s2 <= sinf
    return Check("q-ordering", ok, 0.0, f"|Q1>0|={len(s1)} |Q2>0|={len(s2)} |Qinf>0|={len(sinf)}")


def check_entropy_bounds() -> Check:
    worst = math.inf
    for ch, amps in ((adc, FIG1), (adc, FIG2), (pdc, FIG3)):
        for r in _reports(ch, amps):
            worst = min(worst, r.epsilon)
    rho_f = partial_trace(embed_density(slater_state_from_product()), [0])
    eps_slater = epsilon(rho_f)
    ok = worst >= 0 and eps_slater <= 1e-12
    return Check("entropy-bounds", ok, eps_slater, f"min eps={worst:.3e}")


def check_negativity_interior() -> Check:
    ok = True
    smallest = math.inf
    for amps in (FIG1, FIG2):
        reps = _reports(adc, amps)
        ok &= reps[0].negativity_aE == 0 and reps[-1].negativity_aE == 0
        inner = [r.negativity_aE for r in reps[1:-1]]
        smallest = min(smallest, min(inner))
    ok &= smallest > 0
    return Check("negativity-interior", ok, 0.0, f"min interior N={smallest:.3e}")


SUITES: Dict[str, List[Callable[[], Check]]] = {
    "paper": [
        check_basis_table,
        check_slater_zero,
        check_adc_fig1,
        check_adc_fig2,
        check_pdc_fig3,
        check_ghz_endpoint,
        check_q_indicator,
    ],
    "properties": [
        check_kraus_completeness,
        check_exchange_symmetry,
        check_pdc_populations,
        check_observable_identity,
        check_q_separable,
        check_q_ordering,
        check_entropy_bounds,
        check_negativity_interior,
    ],
}
SUITES["all"] = SUITES["paper"] + SUITES["properties"]


def run_suite(name: str) -> List[Check]:
    return [check() for check in SUITES[name]]
