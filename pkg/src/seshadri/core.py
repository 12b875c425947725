"""Period matrices and the quadratic form of the principal polarization.

A point ``tau = X + iY`` of the Siegel upper half space defines the lattice
``Z^g + tau Z^g`` in ``C^g``.  The polarization gives the Hermitian form
``H(u, v) = conj(u)^T Y^{-1} v``, and for a lattice vector ``m + tau n`` the
value ``H(lam, lam)`` is an integral quadratic form in ``(m, n)``:

    Q(m, n) = (m + X n)^T Y^{-1} (m + X n) + n^T Y n

whose Gram matrix is

    G = [[Y^-1,      Y^-1 X        ],
         [X Y^-1,    X Y^-1 X + Y  ]].

The cross terms of ``H`` cancel because ``Y^{-1} Y`` is symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import BadDimension, NotPositiveDefinite, NotSymmetric

SYM_TOL = 1e-9

FractionMatrix = tuple[tuple[Fraction, ...], ...]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PeriodMatrix:
    """A validated period matrix.  ``exact`` holds rational ``(re, im)`` when known."""

    g: int
    re: np.ndarray
    im: np.ndarray
    exact: tuple[FractionMatrix, FractionMatrix] | None = field(default=None, compare=False)

    @property
    def tau(self) -> np.ndarray:
        return self.re + 1j * self.im

    def to_json(self) -> dict:
        if self.exact is not None:
            re, im = self.exact
            return {"g": self.g, "re": _fraction_rows_to_str(re), "im": _fraction_rows_to_str(im)}
        return {"g": self.g, "re": self.re.tolist(), "im": self.im.tolist()}


@dataclass(frozen=True)
class GramForm:
    """Positive definite Gram matrix on Z^{2g}; ``exact`` is the rational copy if available."""

    gram: np.ndarray
    exact: FractionMatrix | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def value(self, v: Sequence[int]) -> float:
        v = np.asarray(v, dtype=float)
        return float(v @ self.gram @ v)

    def exact_value(self, v: Sequence[int]) -> Fraction | None:
        if self.exact is None:
            return None
        v = [int(x) for x in v]
        return sum(
            (v[i] * row[j] * v[j] for i, row in enumerate(self.exact) for j in range(len(v)) if v[i] and v[j]),
            Fraction(0),
        )


@dataclass(frozen=True)
class LatticeVector:
    """The period ``m + tau n``."""

    m: tuple[int, ...]
    n: tuple[int, ...]

    @classmethod
    def from_coords(cls, v: Sequence[int]) -> "LatticeVector":
        v = [int(x) for x in v]
        if len(v) % 2:
            raise BadDimension(f"lattice coordinates must have even length, got {len(v)}")
        g = len(v) // 2
        return cls(tuple(v[:g]), tuple(v[g:]))

    @property
    def coords(self) -> tuple[int, ...]:
        return self.m + self.n

    def is_zero(self) -> bool:
        return not any(self.coords)


def _fraction_rows_to_str(rows: FractionMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in rows]


def _parse_entry(x: Any) -> Fraction | float:
    if isinstance(x, bool):
        raise BadDimension("boolean is not a matrix entry")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return float(x)


def _as_rows(raw: Any, name: str) -> list[list[Fraction | float]]:
    if isinstance(raw, np.ndarray):
        raw = raw.tolist()
    try:
        rows = [[_parse_entry(x) for x in row] for row in raw]
    except TypeError as exc:
        raise BadDimension(f"{name} is not a matrix") from exc
    except ValueError as exc:
        raise BadDimension(f"{name} has an unparsable entry: {exc}") from exc
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise BadDimension(f"{name} must be a non-empty square matrix")
    return rows


def _symmetrize(rows, name: str):
    """Average with the transpose if the asymmetry is within tolerance; reject otherwise."""
    a = np.array([[float(x) for x in r] for r in rows])
    asym = np.max(np.abs(a - a.T))
    scale = max(1.0, float(np.max(np.abs(a))))
    if asym > SYM_TOL * scale:
        raise NotSymmetric(f"{name} asymmetry {asym:.3g} exceeds tolerance {SYM_TOL * scale:.3g}")
    n = len(rows)
    return [[(rows[i][j] + rows[j][i]) / 2 for j in range(n)] for i in range(n)]


def validate_period_matrix(g: int | None, re: Any, im: Any) -> PeriodMatrix:
    """Check the Riemann conditions and return a :class:`PeriodMatrix`.

    Entries may be floats, ints, ``Fraction`` or ``"p/q"`` strings; when no
    entry is a float the rational values are kept for exact evaluation.
    """
    re_rows = _as_rows(re, "re")
    im_rows = _as_rows(im, "im")
    if len(re_rows) != len(im_rows):
        raise BadDimension("re and im must have the same size")
    if g is None:
        g = len(re_rows)
    if g < 1 or g != len(re_rows):
        raise BadDimension(f"g={g} does not match matrices of size {len(re_rows)}")

    re_rows = _symmetrize(re_rows, "re")
    im_rows = _symmetrize(im_rows, "im")
    re_f = np.array([[float(x) for x in r] for r in re_rows])
    im_f = np.array([[float(x) for x in r] for r in im_rows])
    if not (np.all(np.isfinite(re_f)) and np.all(np.isfinite(im_f))):
        raise BadDimension("entries must be finite")
    try:
        np.linalg.cholesky(im_f)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("imaginary part is not positive definite") from exc

    exact = None
    if all(isinstance(x, Fraction) for r in re_rows + im_rows for x in r):
        exact = (tuple(map(tuple, re_rows)), tuple(map(tuple, im_rows)))
    return PeriodMatrix(g, _frozen(re_f), _frozen(im_f), exact)


def period_matrix_from_json(obj: dict) -> PeriodMatrix:
    return validate_period_matrix(obj.get("g"), obj["re"], obj["im"])


def period_matrix_from_complex(tau: Any) -> PeriodMatrix:
    """Convenience constructor from a complex scalar or matrix."""
    t = np.atleast_2d(np.asarray(tau, dtype=complex))
    return validate_period_matrix(t.shape[0], t.real, t.imag)


def fraction_inverse(a: Sequence[Sequence[Fraction]]) -> FractionMatrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise NotPositiveDefinite("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _fmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def _exact_gram(re: FractionMatrix, im: FractionMatrix) -> FractionMatrix:
    g = len(re)
    yinv = fraction_inverse(im)
    yinv_x = _fmul(yinv, re)
    x_yinv = _fmul(re, yinv)
    lower = _fmul(x_yinv, re)
    gram = [[Fraction(0)] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            gram[i][j] = yinv[i][j]
            gram[i][g + j] = yinv_x[i][j]
            gram[g + i][j] = x_yinv[i][j]
            gram[g + i][g + j] = lower[i][j] + im[i][j]
    return tuple(map(tuple, gram))


def gram_from_period(tau: PeriodMatrix) -> GramForm:
    """Gram matrix of ``Q(m, n) = H(m + tau n, m + tau n)`` on Z^{2g}."""
    x, y = tau.re, tau.im
    yinv = np.linalg.inv(y)
    yinv = (yinv + yinv.T) / 2
    top_right = yinv @ x
    gram = np.block([[yinv, top_right], [top_right.T, x @ yinv @ x + y]])
    gram = (gram + gram.T) / 2
    exact = _exact_gram(*tau.exact) if tau.exact is not None else None
    if exact is not None:
        gram = np.array([[float(v) for v in row] for row in exact])
    return GramForm(_frozen(gram), exact)


def hermitian_norm(tau: PeriodMatrix, v: LatticeVector) -> float:
    """``H(lam, lam)`` for ``lam = m + tau n``, evaluated in complex arithmetic."""
    m = np.asarray(v.m, dtype=float)
    n = np.asarray(v.n, dtype=float)
    if m.shape != (tau.g,) or n.shape != (tau.g,):
        raise BadDimension(f"lattice vector does not match g={tau.g}")
    lam = m + tau.tau @ n
    val = np.vdot(lam, np.linalg.solve(tau.im, lam))
    return float(val.real)


def product(tau1: PeriodMatrix, tau2: PeriodMatrix) -> PeriodMatrix:
    """Period matrix of the product ``A1 x A2`` with the product polarization."""
    g = tau1.g + tau2.g
    re = np.zeros((g, g))
    im = np.zeros((g, g))
    re[: tau1.g, : tau1.g] = tau1.re
    re[tau1.g :, tau1.g :] = tau2.re
    im[: tau1.g, : tau1.g] = tau1.im
    im[tau1.g :, tau1.g :] = tau2.im
    exact = None
    if tau1.exact is not None and tau2.exact is not None:
        exact = tuple(_block_diag_fraction(a, b) for a, b in zip(tau1.exact, tau2.exact))
    return PeriodMatrix(g, _frozen(re), _frozen(im), exact)


def _block_diag_fraction(a: FractionMatrix, b: FractionMatrix) -> FractionMatrix:
    g1, g2 = len(a), len(b)
    rows = [list(r) + [Fraction(0)] * g2 for r in a]
    rows += [[Fraction(0)] * g1 + list(r) for r in b]
    return tuple(map(tuple, rows))


def translate(tau: PeriodMatrix, b: np.ndarray) -> PeriodMatrix:
    """``tau + B`` for an integer symmetric ``B``."""
    return period_matrix_from_complex(tau.tau + np.asarray(b))


def invert(tau: PeriodMatrix) -> PeriodMatrix:
    """``-tau^{-1}``."""
    t = -np.linalg.inv(tau.tau)
    return period_matrix_from_complex((t + t.T) / 2)
