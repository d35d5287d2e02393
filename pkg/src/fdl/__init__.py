"""Entanglement dynamics of two identical spin-3/2 fermions sharing a
two-level environment under amplitude- and phase-damping channels."""

from fdl.numerics import Spectrum, hermitian_eigen, product_sqrt_spectrum, psd_sqrt
from fdl.hilbert import (
    DensityOperator,
    SupportLeak,
    TripartiteState,
    build_embedding,
    embed_density,
    embed_state,
    exchange_symmetry_holds,
    pair_state,
    partial_trace,
    partial_transpose,
    reduce_to_antisymmetric,
    symmetrized_expectation,
)
from fdl.channels import KrausChannel, adc, apply, dilate, pdc
from fdl.measures import (
    EntanglementReport,
    c_env_vs_pair,
    c_one_vs_rest,
    concurrence,
    epsilon,
    negativity,
    q_indicator,
    renyi_entropy,
    report,
    residuals,
)

__version__ = "0.1.0"

__all__ = [
    "DensityOperator",
    "EntanglementReport",
    "KrausChannel",
    "Spectrum",
    "SupportLeak",
    "TripartiteState",
    "adc",
    "apply",
    "build_embedding",
    "c_env_vs_pair",
    "c_one_vs_rest",
    "concurrence",
    "dilate",
    "embed_density",
    "embed_state",
    "epsilon",
    "exchange_symmetry_holds",
    "hermitian_eigen",
    "negativity",
    "pair_state",
    "partial_trace",
    "partial_transpose",
    "pdc",
    "product_sqrt_spectrum",
    "psd_sqrt",
    "q_indicator",
    "reduce_to_antisymmetric",
    "renyi_entropy",
    "report",
    "residuals",
    "symmetrized_expectation",
]
