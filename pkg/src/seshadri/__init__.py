"""Minimal periods and Seshadri-constant bounds for principally polarized abelian varieties."""

from .bounds import BoundsReport, bounds_report
from .core import (
    GramForm,
    LatticeVector,
    PeriodMatrix,
    gram_from_period,
    hermitian_norm,
    period_matrix_from_complex,
    period_matrix_from_json,
    product,
    validate_period_matrix,
)
from .lattice import brute_force_shortest, lll_reduce, min_period_length, shortest_vector

__all__ = [
    "BoundsReport",
    "GramForm",
    "LatticeVector",
    "PeriodMatrix",
    "bounds_report",
    "brute_force_shortest",
    "gram_from_period",
    "hermitian_norm",
    "lll_reduce",
    "min_period_length",
    "period_matrix_from_complex",
    "period_matrix_from_json",
    "product",
    "shortest_vector",
    "validate_period_matrix",
]
