"""Numerical check of the radial model for the symplectic blow-up of a point in C^n.

The radial map ``F(z) = phi(|z|) z / |z|`` with

    phi(r) = sqrt(lam^2 + r^2)   for r <= delta,
    phi(r) = r                    for r >= lam (1 + eta),

pulls ``omega_std`` back to a form equal to ``omega_std`` outside the ball of
radius ``lam (1 + eta)`` and to ``omega_std + lam^2 q^* sigma`` near the origin,
where ``sigma`` is the Fubini-Study form with lines of area ``pi``.

On ``[delta, lam (1 + eta)]`` the slope ``phi'`` is a partition-of-unity mix
of three positive functions: the inner branch slope ``r / sqrt(lam^2 + r^2)``
near ``delta``, a constant plateau ``kappa`` in the middle and ``1`` near the
outer radius.  The weights switch over quintic smoothsteps of width ``ell``,
so ``phi`` is C^2 at both knots and ``phi' > 0`` holds by convexity; ``kappa``
is fixed by requiring ``phi(lam (1 + eta)) = lam (1 + eta)``, which is linear.
A single polynomial blend cannot do this well: ``phi`` rises by only about
``eta lam`` over the shell yet must end with slope 1, and polynomial slopes
either go negative or dip to ~1e-14.

Real coordinates are ordered ``(x1, y1, x2, y2, ...)`` so that ``omega_std`` has
``[[0, 1], [-1, 0]]`` blocks.  A two-form is stored as the antisymmetric
matrix ``M`` with ``omega(u, v) = u^T M v``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import StepTooSmall, ZeroInput

_GL_X, _GL_W = np.polynomial.legendre.leggauss(64)
_EPS = np.finfo(float).eps


# ---------------------------------------------------------------- profile


def smoothstep(t):
    """Quintic step: 0 -> 1 on [0, 1] with vanishing first and second derivatives at both ends."""
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (10 - 15 * t + 6 * t**2)


def smoothstep_prime(t):
    t = np.asarray(t, dtype=float)
    inside = (t > 0) & (t < 1)
    return np.where(inside, 30 * t**2 * (1 - t) ** 2, 0.0)


@dataclass(frozen=True)
class BlowupProfile:
    n: int
    lam: float
    eta: float
    delta: float
    ell: float = 0.0  # width of each smoothstep transition
    kappa: float = 0.0  # plateau slope
    kind: str = "blowup"  # "identity" gives phi(r) = r everywhere (negative control)

    @property
    def outer(self) -> float:
        return self.lam * (1 + self.eta)

    @property
    def knots(self) -> tuple[float, float, float, float]:
        return (self.delta, self.delta + self.ell, self.outer - self.ell, self.outer)

    @classmethod
    def build(cls, n: int = 2, lam: float = 0.8, eta: float = 0.05, delta: float | None = None) -> "BlowupProfile":
        if n < 1:
            raise ValueError("complex dimension must be >= 1")
        if not (lam > 0 and eta > 0):
            raise ValueError("lam and eta must be positive")
        if delta is None:
            delta = lam / 10
        outer = lam * (1 + eta)
        if not 0 < delta < lam or math.hypot(lam, delta) >= outer:
            raise ValueError(f"delta={delta} too large: need sqrt(lam^2 + delta^2) < lam (1 + eta)")
        width = outer - delta
        average = (outer - math.hypot(lam, delta)) / width
        ell = width / 4
        while True:
            kappa = _plateau(lam, delta, outer, ell)
            if kappa >= average / 2:
                return cls(n, lam, eta, delta, ell, kappa)
            ell /= 2

    @classmethod
    def identity(cls, n: int = 2, lam: float = 0.8, eta: float = 0.05, delta: float | None = None) -> "BlowupProfile":
        return cls(n, lam, eta, lam / 10 if delta is None else delta, kind="identity")


def _gauss(f, lo, hi):
    """64-point Gauss-Legendre integral of ``f`` over ``[lo, hi]``; ``hi`` may be an array."""
    hi = np.asarray(hi, dtype=float)
    half = (hi - lo) / 2
    nodes = lo + half[..., None] * (_GL_X + 1)
    return np.sum(f(nodes) * _GL_W, axis=-1) * half


def _inner_slope(lam, r):
    return r / np.sqrt(lam**2 + r**2)


def _plateau(lam, delta, outer, ell):
    """Plateau slope that makes the blend end exactly at ``phi = outer``."""
    left = _gauss(lambda r: (1 - smoothstep((r - delta) / ell)) * _inner_slope(lam, r), delta, delta + ell)
    right = _gauss(lambda r: smoothstep((r - outer + ell) / ell), outer - ell, outer)
    mid_weight = (outer - delta) - ell  # full middle plus half of each transition
    rise = outer - math.hypot(lam, delta)
    return float((rise - left - right) / mid_weight)


def _blend_slope(r, p: BlowupProfile):
    w_left = 1 - smoothstep((r - p.delta) / p.ell)
    w_right = smoothstep((r - p.outer + p.ell) / p.ell)
    return w_left * _inner_slope(p.lam, r) + (1 - w_left - w_right) * p.kappa + w_right


def _blend_value(r, p: BlowupProfile):
    """``phi(r)`` on the blend, integrating the slope piece by piece between knots."""
    r = np.asarray(r, dtype=float)
    total = np.full(r.shape, math.hypot(p.lam, p.delta))
    k = p.knots
    for lo, hi in zip(k[:-1], k[1:]):
        top = np.clip(r, lo, hi)
        total += _gauss(lambda s: _blend_slope(s, p), lo, top)
    return total


def phi(r, p: BlowupProfile):
    """Radial profile; accepts scalars or arrays with ``r > 0``."""
    r = np.asarray(r, dtype=float)
    if p.kind == "identity":
        return r.copy() if r.ndim else float(r)
    out = np.where(r <= p.delta, np.sqrt(p.lam**2 + r**2), r)
    mid = (r > p.delta) & (r < p.outer)
    if np.any(mid):
        out = np.array(out, dtype=float)
        out[mid] = _blend_value(r[mid], p)
    return out if out.ndim else float(out)


def phi_prime(r, p: BlowupProfile):
    r = np.asarray(r, dtype=float)
    if p.kind == "identity":
        return np.ones_like(r) if r.ndim else 1.0
    out = np.where(r <= p.delta, _inner_slope(p.lam, r), 1.0)
    mid = (r > p.delta) & (r < p.outer)
    if np.any(mid):
        out = np.array(out, dtype=float)
        out[mid] = _blend_slope(r[mid], p)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------- linear algebra helpers


def to_real(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    x = np.empty(2 * z.size)
    x[0::2] = z.real
    x[1::2] = z.imag
    return x


def to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def omega_std(n: int) -> np.ndarray:
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def complex_structure(n: int) -> np.ndarray:
    """Multiplication by ``i`` in real coordinates."""
    return np.kron(np.eye(n), np.array([[0.0, -1.0], [1.0, 0.0]]))


def hermitian_to_form(h: np.ndarray) -> np.ndarray:
    """Real matrix of ``(u, v) -> Im(u^H h v)``."""
    n = h.shape[0]
    basis = np.zeros((n, 2 * n), dtype=complex)
    basis[np.arange(n), 2 * np.arange(n)] = 1
    basis[np.arange(n), 2 * np.arange(n) + 1] = 1j
    m = (basis.conj().T @ h @ basis).imag
    return (m - m.T) / 2


@dataclass(frozen=True)
class TwoForm:
    base_point: np.ndarray
    matrix: np.ndarray

    def __call__(self, u, v) -> float:
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))

    def antisymmetry_defect(self) -> float:
        return float(np.max(np.abs(self.matrix + self.matrix.T)))


# ---------------------------------------------------------------- the radial map and its pullback


def _real_point(z) -> np.ndarray:
    z = np.asarray(z)
    x = to_real(z) if np.iscomplexobj(z) else np.asarray(z, dtype=float)
    if not np.any(x):
        raise ZeroInput("the radial map is undefined at the origin")
    return x


def map_F(z, p: BlowupProfile) -> np.ndarray:
    """``F(z) = phi(|z|) z / |z|``; complex in, complex out."""
    z = np.asarray(z, dtype=complex)
    r = float(np.linalg.norm(z))
    if r == 0:
        raise ZeroInput("the radial map is undefined at the origin")
    return phi(r, p) / r * z


def _map_F_real(x: np.ndarray, p: BlowupProfile) -> np.ndarray:
    r = float(np.linalg.norm(x))
    return phi(r, p) / r * x


def jacobian_F(x: np.ndarray, p: BlowupProfile) -> np.ndarray:
    """Real Jacobian: ``phi'`` on the radial line, ``phi / r`` orthogonally to it."""
    r = float(np.linalg.norm(x))
    dim = x.size
    if p.kind == "identity" or r >= p.outer:
        return np.eye(dim)
    proj = np.outer(x, x) / r**2
    return phi(r, p) / r * (np.eye(dim) - proj) + phi_prime(r, p) * proj


def jacobian_F_fd(x: np.ndarray, p: BlowupProfile, h: float | None = None) -> np.ndarray:
    r = float(np.linalg.norm(x))
    if h is None:
        h = 1e-6 * max(1.0, r)
    if h <= 64 * _EPS * max(1.0, r):
        raise StepTooSmall(f"step {h:.3g} is lost in rounding at |z| = {r:.3g}")
    dim = x.size
    jac = np.empty((dim, dim))
    for k in range(dim):
        e = np.zeros(dim)
        e[k] = h
        jac[:, k] = (_map_F_real(x + e, p) - _map_F_real(x - e, p)) / (2 * h)
    return jac


def pullback_two_form(z, p: BlowupProfile, mode: str = "analytic", h: float | None = None) -> TwoForm:
    """Matrix of ``F^* omega_std`` at ``z`` (complex n-vector or real 2n-vector)."""
    x = _real_point(z)
    if mode == "analytic":
        jac = jacobian_F(x, p)
    elif mode in ("fd", "finite-difference"):
        jac = jacobian_F_fd(x, p, h)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    m = jac.T @ omega_std(x.size // 2) @ jac
    return TwoForm(x, (m - m.T) / 2)


def fs_hermitian(z) -> np.ndarray:
    """Hermitian coefficients of ``(i/2) ddbar log|z|^2`` as ``(|z|^2 I - z z^H) / |z|^4``."""
    z = np.asarray(z, dtype=complex)
    r2 = float(np.vdot(z, z).real)
    if r2 == 0:
        raise ZeroInput("the Fubini-Study pullback is undefined at the origin")
    return (r2 * np.eye(z.size) - np.outer(z, z.conj())) / r2**2


def fs_pullback_form(z) -> TwoForm:
    """``q^* sigma`` on ``C^n \\ {0}``, normalized so that a line has area ``pi``."""
    x = _real_point(z)
    return TwoForm(x, hermitian_to_form(fs_hermitian(to_complex(x))))


def inner_target(z, p: BlowupProfile) -> np.ndarray:
    x = _real_point(z)
    return omega_std(x.size // 2) + p.lam**2 * fs_pullback_form(x).matrix


# ---------------------------------------------------------------- sampling and reports


@dataclass
class RegionReport:
    region: str
    samples: int
    max_abs_deviation: float
    passed: bool
    min_eigenvalue: float | None = None

    def to_json(self) -> dict:
        return asdict(self)


def sample_shell(n: int, r_min: float, r_max: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform-by-volume samples in ``r_min < |x| < r_max`` of R^{2n}; rows are real points."""
    dim = 2 * n
    d = rng.standard_normal((count, dim))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    u = rng.uniform(0, 1, count)
    r = (r_min**dim + u * (r_max**dim - r_min**dim)) ** (1 / dim)
    r = np.clip(r, np.nextafter(r_min, np.inf), np.nextafter(r_max, -np.inf))
    return d * r[:, None]


def verify_region_outer(p: BlowupProfile, samples: int = 500, tol: float = 1e-12, seed: int = 0,
                        mode: str = "analytic") -> RegionReport:
    """Outside the ball of radius ``lam (1 + eta)`` the pullback is ``omega_std``."""
    rng = np.random.default_rng(seed)
    ref = omega_std(p.n)
    pts = sample_shell(p.n, p.outer, 3 * p.lam, samples, rng)
    dev = max(float(np.max(np.abs(pullback_two_form(x, p, mode).matrix - ref))) for x in pts)
    return RegionReport("outer", samples, dev, dev <= tol)


def verify_region_inner(p: BlowupProfile, samples: int = 500, tol: float = 1e-8, seed: int = 0,
                        mode: str = "analytic") -> RegionReport:
    """Inside the ball of radius ``delta`` the pullback is ``omega_std + lam^2 q^* sigma``."""
    rng = np.random.default_rng(seed)
    pts = sample_shell(p.n, 0.0, p.delta, samples, rng)
    dev = max(float(np.max(np.abs(pullback_two_form(x, p, mode).matrix - inner_target(x, p)))) for x in pts)
    return RegionReport("inner", samples, dev, dev <= tol)


def kahler_data(form: np.ndarray) -> tuple[float, float]:
    """(min eigenvalue of the metric ``omega(u, Ju)``, defect of J-invariance)."""
    n = form.shape[0] // 2
    j = complex_structure(n)
    metric = form @ j
    metric = (metric + metric.T) / 2
    defect = float(np.max(np.abs(j.T @ form @ j - form)))
    return float(np.linalg.eigvalsh(metric)[0]), defect


def verify_positivity(p: BlowupProfile, samples: int = 1000, seed: int = 0, tol: float = 1e-9) -> RegionReport:
    """Kahler check in the inner ball, the blend shell and the outer shell.

    Radii are drawn uniformly (not by volume) in each region so the thin blend
    shell gets a full third of the samples.
    """
    rng = np.random.default_rng(seed)
    regions = [(0.0, p.delta), (p.delta, p.outer), (p.outer, 3 * p.lam)]
    counts = [samples // 3 + (i < samples % 3) for i in range(3)]
    min_eig, defect = math.inf, 0.0
    for (lo, hi), k in zip(regions, counts):
        d = rng.standard_normal((k, 2 * p.n))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        radii = rng.uniform(lo, hi, k)
        radii = np.where(radii <= 0, hi / 2, radii)
        for x in d * radii[:, None]:
            form = pullback_two_form(x, p).matrix
            e, dj = kahler_data(form)
            scale = max(1.0, float(np.max(np.abs(form))))
            min_eig, defect = min(min_eig, e), max(defect, dj / scale)
    return RegionReport("positivity", samples, defect, min_eig > 0 and defect <= tol, min_eig)


def verify_fd_agreement(p: BlowupProfile, samples: int = 100, tol: float = 1e-6, seed: int = 0) -> RegionReport:
    """Analytic versus central-difference Jacobian across all three regions."""
    rng = np.random.default_rng(seed)
    pts = sample_shell(p.n, 0.0, 3 * p.lam, samples, rng)
    dev = 0.0
    for x in pts:
        a = pullback_two_form(x, p, "analytic").matrix
        f = pullback_two_form(x, p, "fd").matrix
        dev = max(dev, float(np.max(np.abs(a - f))))
    return RegionReport("fd-cross", samples, dev, dev <= tol)


def verify_hopf(n: int = 2, samples: int = 200, tol: float = 1e-12, seed: int = 0) -> RegionReport:
    """On the unit sphere, ``q^* sigma`` agrees with ``omega_std`` on tangent vectors."""
    rng = np.random.default_rng(seed)
    pts = sample_shell(n, 1.0 - 1e-12, 1.0, samples, rng)
    ref = omega_std(n)
    dev = 0.0
    for x in pts:
        x = x / np.linalg.norm(x)
        u, v = rng.standard_normal((2, 2 * n))
        u -= (u @ x) * x
        v -= (v @ x) * x
        sigma = fs_pullback_form(x).matrix
        dev = max(dev, abs(u @ sigma @ v - u @ ref @ v))
    return RegionReport("hopf", samples, dev, dev <= tol)


def fs_normalization(resolution: int = 512) -> float:
    """Area of a line in projective space under ``sigma``; expected ``pi``.

    In the affine chart the density is ``1 / (1 + r^2)^2`` in polar coordinates.
    The radius is compactified with ``r = tan(theta)`` and the integral over
    ``theta in [0, pi/2]`` uses composite Simpson with ``resolution`` intervals.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    intervals = resolution + (resolution % 2)
    theta = np.linspace(0.0, math.pi / 2, intervals + 1)
    f = np.zeros_like(theta)
    inner = theta[:-1]
    r = np.tan(inner)
    f[:-1] = 2 * math.pi * r / (1 + r**2) ** 2 / np.cos(inner) ** 2  # the integrand vanishes at r = inf
    h = theta[1] - theta[0]
    weights = np.ones(intervals + 1)
    weights[1:-1:2] = 4
    weights[2:-1:2] = 2
    return float(h / 3 * np.dot(weights, f))


def verify_normalization(resolution: int = 512, tol: float = 1e-6) -> RegionReport:
    dev = abs(fs_normalization(resolution) - math.pi)
    return RegionReport("normalization", resolution, dev, dev <= tol)


def closedness_defect(form_at, x: np.ndarray, h: float | None = None) -> float:
    """Max ``|d omega|_{ijk}`` at ``x`` by central differences of the matrix field ``form_at``."""
    x = np.asarray(x, dtype=float)
    dim = x.size
    if h is None:
        h = 6e-6 * float(np.linalg.norm(x))
    grads = []
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = h
        grads.append((form_at(x + e) - form_at(x - e)) / (2 * h))
    worst = 0.0
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                d = grads[i][j, k] + grads[j][k, i] + grads[k][i, j]
                worst = max(worst, abs(d))
    return worst


def verify_closedness(p: BlowupProfile, samples: int = 50, tol: float = 1e-5, seed: int = 0) -> RegionReport:
    """``omega_std + lam^2 q^* sigma`` is closed on the inner ball."""
    rng = np.random.default_rng(seed)
    pts = sample_shell(p.n, p.delta / 2, p.delta, samples, rng)
    dev = max(closedness_defect(lambda y: inner_target(y, p), x) for x in pts)
    return RegionReport("closedness", samples, dev, dev <= tol)


def run_all(n: int = 2, lam: float = 0.8, eta: float = 0.05, delta: float | None = None, samples: int = 1000,
            tol: float = 1e-8, seed: int = 0, mode: str = "analytic") -> list[RegionReport]:
    p = BlowupProfile.build(n, lam, eta, delta)
    analytic = mode == "analytic"
    # finite differences cannot reproduce the identity branch exactly
    outer_tol = 0.0 if analytic else max(tol, 1e-6)
    inner_tol = tol if analytic else max(tol, 1e-6)
    return [
        verify_region_outer(p, samples, outer_tol, seed, mode),
        verify_region_inner(p, samples, inner_tol, seed + 1, mode),
        verify_positivity(p, samples, seed + 2),
        verify_fd_agreement(p, min(samples, 100), 1e-6, seed + 3),
        verify_hopf(n, min(samples, 200), 1e-12, seed + 4),
        verify_closedness(p, min(samples, 50), 1e-5, seed + 5),
        verify_normalization(512, 1e-6),
    ]
