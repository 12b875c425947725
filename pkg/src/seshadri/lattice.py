"""Exact minimum of a positive definite quadratic form over nonzero integer vectors.

``shortest_vector`` LLL-reduces the Gram matrix and then runs Fincke-Pohst
enumeration inside the ellipsoid ``Q(x) <= r``, shrinking ``r`` whenever a
shorter vector turns up.  ``brute_force_shortest`` scans a certified box and
is kept as an independent oracle.

Ties are broken deterministically: vectors are sign-normalized so that the
first nonzero coordinate is positive, then ordered by position of the first
nonzero coordinate, then by absolute values, then lexicographically.  For the
identity form this picks ``(1, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import GramForm, LatticeVector, PeriodMatrix, gram_from_period
from .errors import BoxTooSmall, DimensionTooLarge, NotPositiveDefinite, NumericalBreakdown

DELTA_LLL = 0.99
ENUM_DIM_CAP = 20
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class ReducedBasis:
    basis: tuple[tuple[int, ...], ...]  # columns are the reduced basis vectors
    gram_reduced: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64)

    @property
    def first_value(self) -> float:
        return float(self.gram_reduced[0, 0])


@dataclass(frozen=True)
class ShortestResult:
    vector: LatticeVector
    value: float
    method: str
    minimizers: int = 0
    exact_value: Fraction | None = None

    def to_json(self) -> dict:
        out = {"value": self.value, "vector": list(self.vector.coords), "method": self.method,
               "minimizers": self.minimizers}
        if self.exact_value is not None:
            out["exact_value"] = str(self.exact_value)
        return out


def _as_gram(G: GramForm | np.ndarray) -> GramForm:
    if isinstance(G, GramForm):
        return G
    a = np.asarray(G, dtype=float)
    return GramForm(a)


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    a = [[int(x) for x in r] for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _ldl(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gram-Schmidt data: ``gram = mu diag(b) mu^T`` with unit lower-triangular ``mu``."""
    n = gram.shape[0]
    mu = np.eye(n)
    b = np.zeros(n)
    for i in range(n):
        for j in range(i):
            mu[i, j] = (gram[i, j] - np.dot(mu[i, :j] * mu[j, :j], b[:j])) / b[j]
        b[i] = gram[i, i] - np.dot(mu[i, :i] ** 2, b[:i])
        if not b[i] > 0:
            raise NumericalBreakdown(f"Gram-Schmidt norm {b[i]:.3g} at index {i} is not positive")
    return mu, b


def lll_reduce(G: GramForm | np.ndarray, delta: float = DELTA_LLL) -> ReducedBasis:
    """LLL-reduce the lattice ``(Z^n, G)``; returns the unimodular change of basis."""
    if not 0.25 < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    gram = _as_gram(G).gram
    n = gram.shape[0]
    u = np.eye(n, dtype=object)  # Python ints, no overflow

    def current() -> np.ndarray:
        uf = u.astype(float)
        gc = uf.T @ gram @ uf
        return (gc + gc.T) / 2

    gc = current()
    k = 1
    while k < n:
        mu, b = _ldl(gc)
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                u[:, k] = u[:, k] - q * u[:, j]
                mu[k, : j + 1] -= q * mu[j, : j + 1]
        gc = current()
        mu, b = _ldl(gc)
        if b[k] >= (delta - mu[k, k - 1] ** 2) * b[k - 1]:
            k += 1
        else:
            u[:, [k - 1, k]] = u[:, [k, k - 1]]
            gc = current()
            k = max(k - 1, 1)
    basis = tuple(tuple(int(x) for x in row) for row in u)
    gr = current()
    gr.setflags(write=False)
    return ReducedBasis(basis, gr)


def _tie_key(v: tuple[int, ...]) -> tuple:
    first = next(i for i, x in enumerate(v) if x)
    return (first, tuple(abs(x) for x in v), v)


def _normalize_sign(v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    first = next((x for x in v if x), 0)
    return tuple(-x for x in v) if first < 0 else v


def _select(G: GramForm, candidates: Sequence[Sequence[int]], method: str) -> ShortestResult:
    """Re-evaluate candidates on the original form, pick the minimum with the tie rule."""
    scored = {}
    for c in candidates:
        v = _normalize_sign(c)
        if any(v):
            scored[v] = G.value(v)
    if G.exact is not None:
        exact = {v: G.exact_value(v) for v in scored}
        best_exact = min(exact.values())
        winners = [v for v, e in exact.items() if e == best_exact]
    else:
        best = min(scored.values())
        winners = [v for v, val in scored.items() if val <= best * (1 + TIE_RTOL)]
    v = min(winners, key=_tie_key)
    exact_value = G.exact_value(v)
    value = float(exact_value) if exact_value is not None else scored[v]
    return ShortestResult(LatticeVector.from_coords(v), value, method, 2 * len(winners), exact_value)


def _enumerate(gram: np.ndarray, radius: float) -> list[tuple[int, ...]]:
    """Fincke-Pohst enumeration of vectors with ``Q(x) <= radius`` and shrinking radius.

    Returns every vector (up to sign) within ``best * (1 + 1e-9)`` of the final best value.
    """
    n = gram.shape[0]
    try:
        r = np.linalg.cholesky(gram).T  # gram = r^T r, r upper triangular
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("Gram matrix is not positive definite") from exc
    q = [float(r[i, i]) ** 2 for i in range(n)]
    mu = [[float(r[i, j] / r[i, i]) for j in range(n)] for i in range(n)]
    slack = 1e-9
    state = {"best": radius / (1 + slack), "bound": radius}
    found: list[tuple[float, tuple[int, ...]]] = []
    x = [0] * n

    def rec(i: int, partial: float, leading: bool) -> None:
        c = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        rem = state["bound"] - partial
        if rem < 0:
            return
        w = math.sqrt(rem / q[i])
        lo, hi = math.ceil(c - w), math.floor(c + w)
        if leading:
            lo = max(lo, 0)  # first nonzero from the top is positive: halves the search
        for xi in sorted(range(lo, hi + 1), key=lambda t: abs(t - c)):
            val = partial + q[i] * (xi - c) ** 2
            if val > state["bound"]:
                break
            x[i] = xi
            if i == 0:
                if any(x):
                    found.append((val, tuple(x)))
                    if val < state["best"]:
                        state["best"] = val
                        state["bound"] = val * (1 + slack)
            else:
                rec(i - 1, val, leading and xi == 0)
        x[i] = 0

    rec(n - 1, 0.0, True)
    return [v for val, v in found if val <= state["bound"]]


def shortest_vector(G: GramForm | np.ndarray, enum_dim_cap: int = ENUM_DIM_CAP,
                    delta: float = DELTA_LLL) -> ShortestResult:
    """Global minimum of ``Q`` over ``Z^n \\ {0}`` with a deterministic minimizer."""
    G = _as_gram(G)
    if G.dim > enum_dim_cap:
        raise DimensionTooLarge(f"dimension {G.dim} exceeds the enumeration cap {enum_dim_cap}")
    red = lll_reduce(G, delta)
    gr = red.gram_reduced
    radius = float(np.min(np.diag(gr))) * (1 + 1e-9)
    coeffs = _enumerate(gr, radius)
    u = np.array(red.basis, dtype=object)
    candidates = [tuple(int(t) for t in u.dot(np.array(c, dtype=object))) for c in coeffs]
    return _select(G, candidates, "enumeration")


def certified_box(G: GramForm | np.ndarray) -> int:
    """Smallest box radius guaranteed to contain a minimizer.

    Any ``v`` with ``Q(v) <= q1`` satisfies ``|v_i| <= sqrt(q1 * (G^-1)_ii)``; ``q1`` is
    the smallest diagonal entry, i.e. the value of a standard basis vector.
    """
    gram = _as_gram(G).gram
    q1 = float(np.min(np.diag(gram)))
    ginv = np.linalg.inv(gram)
    reach = np.sqrt(q1 * np.clip(np.diag(ginv), 0, None)) * (1 + 1e-9)
    return max(1, int(math.floor(float(np.max(reach)))))


def brute_force_shortest(G: GramForm | np.ndarray, box: int | None = None) -> ShortestResult:
    """Exhaustive minimum over nonzero vectors with coordinates in ``[-box, box]``."""
    G = _as_gram(G)
    need = certified_box(G)
    if box is None:
        box = need
    if box < 1:
        raise ValueError("box must be a positive integer")
    if need > box:
        raise BoxTooSmall(f"certified radius {need} exceeds box {box}")
    n = G.dim
    gram = G.gram
    side = np.arange(-box, box + 1)
    if n > 1:
        rest = np.stack(np.meshgrid(*([side] * (n - 1)), indexing="ij"), -1).reshape(-1, n - 1)
    else:
        rest = np.zeros((1, 0), dtype=int)
    best = math.inf
    winners: list[tuple[int, ...]] = []
    for first in range(0, box + 1):  # first coordinate >= 0 covers every vector up to sign
        vecs = np.hstack([np.full((rest.shape[0], 1), first), rest])
        vals = np.einsum("ij,jk,ik->i", vecs, gram, vecs)
        if first == 0:
            vals[np.all(vecs == 0, axis=1)] = np.inf
        lo = float(vals.min())
        if lo > best * (1 + 1e-9):
            continue
        if lo < best:
            best = lo
            winners = [w for w in winners if G.value(w) <= best * (1 + 1e-9)]
        idx = np.nonzero(vals <= best * (1 + 1e-9))[0]
        winners.extend(tuple(int(t) for t in vecs[i]) for i in idx)
    return _select(G, winners, "brute-force")


def min_period_length(tau: PeriodMatrix, enum_dim_cap: int = ENUM_DIM_CAP) -> float:
    """The invariant m(A): squared length of the shortest nonzero period."""
    return shortest_vector(gram_from_period(tau), enum_dim_cap).value
