"""Closed-form Seshadri-constant and period bounds for principally polarized abelian varieties.

Every bound here concerns ``eps(A)``, the supremum of ``eps`` such that
``f^* c_1(Theta) - eps [E]`` is nef on the blow-up of ``A`` at a point.  The
nef cone itself is never computed; the report only collects and cross-checks
the inequalities that pin ``eps(A)`` down.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .core import PeriodMatrix
from .errors import BadGonality, GenusMismatch, GenusTooSmall
from .lattice import ENUM_DIM_CAP, min_period_length

NAKAMAYE_FLOOR = 1.0
CHECK_TOL = 1e-9


def _check_genus(g: int, minimum: int = 1) -> None:
    if g < minimum:
        raise GenusTooSmall(f"genus {g} < {minimum}")


def _check_gonality(d: int) -> None:
    if d < 2:
        raise BadGonality(f"gonality {d} < 2")


def _log_factorial(g: int) -> float:
    return math.lgamma(g + 1)


def seshadri_lower_from_period(m_A: float) -> float:
    """``pi m(A) / 4``: a ball of radius ``sqrt(m(A))/2`` embeds in ``A``."""
    if not m_A > 0:
        raise ValueError("m(A) must be positive")
    return math.pi * m_A / 4


def ekl_upper(g: int) -> float:
    """``(g!)^{1/g}``, the volume bound ``eps^g <= Theta^g = g!``."""
    _check_genus(g)
    return math.exp(_log_factorial(g) / g)


def bs1_lower(g: int) -> float:
    """``(2 g!)^{1/g} / pi``, attained by some p.p.a.v. of dimension g."""
    _check_genus(g)
    return math.exp((math.log(2) + _log_factorial(g)) / g) / math.pi


def corollary_lower(g: int) -> float:
    """``2^{1/g} (g!)^{1/g} / 4`` for a very general p.p.a.v.; roughly ``g / 4e``."""
    _check_genus(g)
    return math.exp((math.log(2) + _log_factorial(g)) / g) / 4


def bs2_jacobian_upper(g: int) -> float:
    """``(3/pi) ln(4g + 3)``, an upper bound on m(J(C)) for curves of genus g."""
    _check_genus(g, 2)
    return 3 / math.pi * math.log(4 * g + 3)


def jacobian_seshadri_upper(g: int) -> float:
    _check_genus(g, 2)
    return math.sqrt(g)


def gonality_seshadri_upper(g: int, d: int) -> Fraction:
    """``gd / (g + d - 1)`` for a curve admitting a degree-d map to P^1."""
    _check_genus(g, 2)
    _check_gonality(d)
    return Fraction(g * d, g + d - 1)


def gonality_period_upper(d: int) -> float:
    """``4d / pi``: the gonality bound pushed through ``eps >= pi m / 4``."""
    _check_gonality(d)
    return 4 * d / math.pi


@dataclass
class BoundsReport:
    g: int
    m_A: float | None
    lower_theorem: float | None
    lower_nakamaye: float
    lower_corollary: float
    upper_ekl: float
    bs1_benchmark: float
    effective_lower: float
    jacobian_upper_sqrt: float | None = None
    gonality_upper: Fraction | None = None
    bs2_jacobian_upper: float | None = None
    gonality_period_upper: float | None = None
    consistency_flags: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        if self.gonality_upper is not None:
            out["gonality_upper"] = float(self.gonality_upper)
            out["gonality_upper_exact"] = str(self.gonality_upper)
        return out


def bounds_report(tau: PeriodMatrix | None = None, g: int | None = None, d: int | None = None,
                  is_jacobian: bool = False, enum_dim_cap: int = ENUM_DIM_CAP,
                  m_A: float | None = None) -> BoundsReport:
    """Collect every applicable bound and flag contradictions between them.

    ``m_A`` may be passed instead of ``tau`` when the minimal period is already known.

    Flags mean a proven inequality failed numerically, which points to a bug or
    to an input that is not what it claims to be (e.g. not a Jacobian).
    """
    if g is None:
        if tau is None:
            raise ValueError("either tau or g is required")
        g = tau.g
    _check_genus(g)
    if tau is not None and tau.g != g:
        raise GenusMismatch(f"period matrix has g={tau.g}, report requested g={g}")
    if d is not None:
        _check_gonality(d)
        is_jacobian = True  # a gonality only makes sense for a curve
    if is_jacobian:
        _check_genus(g, 2)

    upper = ekl_upper(g)
    if tau is not None:
        m_A = min_period_length(tau, enum_dim_cap)
    elif m_A is not None and not m_A > 0:
        raise ValueError("m(A) must be positive")
    lower_theorem = seshadri_lower_from_period(m_A) if m_A is not None else None
    effective = max(NAKAMAYE_FLOOR, lower_theorem) if lower_theorem is not None else NAKAMAYE_FLOOR

    report = BoundsReport(
        g=g, m_A=m_A, lower_theorem=lower_theorem, lower_nakamaye=NAKAMAYE_FLOOR,
        lower_corollary=corollary_lower(g), upper_ekl=upper, bs1_benchmark=bs1_lower(g),
        effective_lower=effective,
    )
    if is_jacobian:
        report.jacobian_upper_sqrt = jacobian_seshadri_upper(g)
        report.bs2_jacobian_upper = bs2_jacobian_upper(g)
    if d is not None:
        report.gonality_upper = gonality_seshadri_upper(g, d)
        report.gonality_period_upper = gonality_period_upper(d)

    flags = report.consistency_flags
    if effective > upper * (1 + CHECK_TOL):
        flags.append("effective_lower_exceeds_upper_ekl")
    if m_A is not None:
        if m_A > 4 / math.pi * upper * (1 + CHECK_TOL):
            flags.append("period_exceeds_theorem_ekl_limit")
        if is_jacobian:
            if lower_theorem > report.jacobian_upper_sqrt * (1 + CHECK_TOL):
                flags.append("theorem_lower_exceeds_jacobian_sqrt_upper")
            if m_A > report.bs2_jacobian_upper * (1 + CHECK_TOL):
                flags.append("period_exceeds_bs2")
        if d is not None:
            if lower_theorem > float(report.gonality_upper) * (1 + CHECK_TOL):
                flags.append("theorem_lower_exceeds_gonality_upper")
            if m_A > report.gonality_period_upper * (1 + CHECK_TOL):
                flags.append("period_exceeds_gonality_period_upper")

    if g == 1 or effective >= upper * (1 - CHECK_TOL):
        report.notes.append("lower and upper bounds meet: eps(A) is determined")
    else:
        report.notes.append(
            f"eps(A) lies in [{effective:.6g}, {upper:.6g}]; whether a very general A "
            "attains (g!)^(1/g) is open"
        )
    if g >= 2:
        report.notes.append("eps(A) = 1 exactly when A splits off an elliptic curve (not tested)")
    return report
