"""Intersection numbers on ``C x C`` for a curve of genus ``g``.

Classes are written in the basis ``(F1, F2, Delta)``: the two fibers of the
projections and the diagonal.  The pairing is

    F1.F1 = F2.F2 = 0,  F1.F2 = 1,  Fi.Delta = 1,  Delta.Delta = 2 - 2g

(the last by adjunction).  All arithmetic is over ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BadGonality, BadMultiplicity, DegenerateLinear, GenusMismatch, GenusTooSmall

Rational = Union[int, Fraction]


def _check_genus(g: int) -> None:
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")


def pairing_matrix(g: int) -> tuple[tuple[int, int, int], ...]:
    _check_genus(g)
    return ((0, 1, 1), (1, 0, 1), (1, 1, 2 - 2 * g))


@dataclass(frozen=True)
class DivisorClass:
    """``a F1 + b F2 + c Delta`` on ``C x C``."""

    a: Fraction
    b: Fraction
    c: Fraction
    g: int

    def __post_init__(self):
        _check_genus(self.g)
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def _same(self, other: "DivisorClass") -> None:
        if self.g != other.g:
            raise GenusMismatch(f"genus {self.g} vs {other.g}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.a + other.a, self.b + other.b, self.c + other.c, self.g)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-1) * other

    def __rmul__(self, k: Rational) -> "DivisorClass":
        k = Fraction(k)
        return DivisorClass(k * self.a, k * self.b, k * self.c, self.g)

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return intersect(self, other)
        return self.__rmul__(other)


def fiber1(g: int) -> DivisorClass:
    return DivisorClass(1, 0, 0, g)


def fiber2(g: int) -> DivisorClass:
    return DivisorClass(0, 1, 0, g)


def diagonal(g: int) -> DivisorClass:
    return DivisorClass(0, 0, 1, g)


def intersect(d1: DivisorClass, d2: DivisorClass) -> Fraction:
    d1._same(d2)
    m = pairing_matrix(d1.g)
    return sum((x * m[i][j] * y for i, x in enumerate(d1.coeffs) for j, y in enumerate(d2.coeffs)),
               Fraction(0))


def pullback_theta(g: int) -> DivisorClass:
    """Class of the theta divisor pulled back along ``(x, y) -> O(x - y)``."""
    return DivisorClass(g - 1, g - 1, 1, g)


def sigma_degree(g: int) -> int:
    """Theta-degree of the difference surface ``C - C`` in ``J(C)``, i.e. ``(s^*Theta)^2``."""
    theta = pullback_theta(g)
    deg = intersect(theta, theta)
    assert deg.denominator == 1
    return int(deg)


def seshadri_upper_from_surface(deg: Rational, mult: int) -> float:
    """``sqrt(deg / mult)``: a subvariety of degree ``deg`` with multiplicity ``mult`` at the point."""
    if not isinstance(mult, int) or mult < 1:
        raise BadMultiplicity(f"multiplicity must be a positive integer, got {mult!r}")
    deg = Fraction(deg)
    if deg <= 0:
        raise ValueError("degree must be positive")
    return math.sqrt(deg / mult)


def gamma_class(g: int, d: int) -> DivisorClass:
    """Closure of ``{(x, y) : x != y, phi(x) = phi(y)}`` for a degree-d map ``phi: C -> P^1``."""
    if d < 2:
        raise BadGonality(f"gonality {d} < 2")
    return DivisorClass(d, d, -1, g)


def nef_threshold_gonality(g: int, d: int) -> Fraction:
    """Largest ``eps`` with ``Gamma . (s^*Theta - eps Delta) >= 0``.

    The left side is linear in ``eps``; its root equals ``gd / (g + d - 1)``.
    """
    gamma = gamma_class(g, d)
    const = intersect(gamma, pullback_theta(g))
    slope = -intersect(gamma, diagonal(g))
    if slope == 0:
        raise DegenerateLinear("Gamma . Delta vanishes")
    return -const / slope


def surface_summary(g: int, d: int | None = None) -> dict:
    deg = sigma_degree(g)
    out = {
        "genus": g,
        "sigma_degree": deg,
        "multiplicity": 2 * g - 2,
        "sqrt_upper": seshadri_upper_from_surface(deg, 2 * g - 2),
    }
    if d is not None:
        eps = nef_threshold_gonality(g, d)
        out["gonality"] = d
        out["gonality_threshold"] = float(eps)
        out["gonality_threshold_exact"] = str(eps)
    return out
