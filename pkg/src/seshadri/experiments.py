"""Random search for period matrices with a large minimal period.

A deliberately plain hill climb: mostly local perturbations of the incumbent,
with an occasional fresh draw from the Siegel upper half space.  It exists to
put desk-scale numbers next to the line ``bs1_lower(g)``, not to
compete with serious extremal-lattice searches.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import bs1_lower, ekl_upper
from .core import PeriodMatrix, validate_period_matrix
from .errors import ConsistencyViolation, DimensionTooLarge, SeshadriError
from .lattice import ENUM_DIM_CAP, min_period_length

log = logging.getLogger(__name__)

RESTART_PROB = 0.1
STEP_INIT = 0.25
STEP_MIN, STEP_MAX = 1e-4, 0.5


def random_siegel(g: int, seed=None, spread: float = 1.0) -> PeriodMatrix:
    """``X`` symmetric uniform in ``[-1/2, 1/2]``, ``Y = L L^T + 0.1 I`` with Gaussian ``L``.

    ``seed`` may be an int or an existing ``numpy.random.Generator``.
    """
    if g < 1 or spread <= 0:
        raise ValueError("need g >= 1 and spread > 0")
    rng = np.random.default_rng(seed)
    x = np.triu(rng.uniform(-0.5, 0.5, (g, g)))
    x = x + np.triu(x, 1).T
    low = np.tril(rng.standard_normal((g, g))) * spread
    y = low @ low.T + 0.1 * np.eye(g)
    return validate_period_matrix(g, x, y)


def _perturb(tau: PeriodMatrix, step: float, rng: np.random.Generator) -> PeriodMatrix:
    g = tau.g
    dx = rng.standard_normal((g, g))
    dy = rng.standard_normal((g, g))
    re = tau.re + step * (dx + dx.T) / 2
    im = tau.im + step * (dy + dy.T) / 2
    return validate_period_matrix(g, re, im)


@dataclass
class SearchResult:
    g: int
    iterations: int
    best_tau: PeriodMatrix
    best_m: float
    bs1_reference: float
    ratio: float
    seed: int | None
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "g": self.g, "iterations": self.iterations, "best_tau": self.best_tau.to_json(),
            "best_m": self.best_m, "bs1_reference": self.bs1_reference, "ratio": self.ratio,
            "seed": self.seed, "warnings": list(self.warnings),
        }


def search_max_min_period(g: int, iterations: int, seed: int | None = 0, spread: float = 1.0,
                          enum_dim_cap: int = ENUM_DIM_CAP) -> SearchResult:
    """Maximize m(A) over ``iterations`` evaluations.

    Every evaluated sample must satisfy ``m <= (4/pi) (g!)^{1/g}``; a violation
    contradicts proven bounds and raises :class:`ConsistencyViolation`.
    The random stream per iteration does not depend on ``iterations``, so a
    longer run extends a shorter one with the same seed.
    """
    if 2 * g > enum_dim_cap:
        raise DimensionTooLarge(f"2g = {2 * g} exceeds the enumeration cap {enum_dim_cap}")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    rng = np.random.default_rng(seed)
    ceiling = 4 / math.pi * ekl_upper(g) + 1e-6

    def evaluate(tau: PeriodMatrix) -> float:
        m = min_period_length(tau, enum_dim_cap)
        if m > ceiling:
            raise ConsistencyViolation(f"m(A) = {m} exceeds (4/pi)(g!)^(1/g) = {ceiling}")
        return m

    best = random_siegel(g, rng, spread)
    best_m = evaluate(best)
    step = STEP_INIT
    for _ in range(iterations - 1):
        restart = rng.random() < RESTART_PROB
        try:
            cand = random_siegel(g, rng, spread) if restart else _perturb(best, step, rng)
        except SeshadriError:
            step = max(STEP_MIN, step * 0.9)  # left the Siegel space
            continue
        m = evaluate(cand)
        if m > best_m:
            best, best_m = cand, m
            if not restart:
                step = min(STEP_MAX, step * 1.2)
        elif not restart:
            step = max(STEP_MIN, step * 0.98)

    ref = bs1_lower(g)
    result = SearchResult(g, iterations, best, best_m, ref, best_m / ref, seed)
    if best_m < ref:
        msg = f"best m(A) = {best_m:.6g} is below the BS1 line {ref:.6g} after {iterations} iterations"
        log.warning(msg)
        result.warnings.append(msg)
    return result
