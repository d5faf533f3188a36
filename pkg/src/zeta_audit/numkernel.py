"""Numeric foundation: precision configuration, adaptive quadrature, Gamma, Li, constants.

Quadrature is an adaptive Gauss-Kronrod (7/15) scheme. All intervals whose local
error exceeds their share of the tolerance are bisected together in one batch, so
integrands are always called with whole numpy arrays and the final subdivision is
independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .contours import ContourSpec, Piece, segment
from .errors import DomainError, PoleError, QuadratureError

EULER_GAMMA = 0.57721566490153286060651209008240243


@dataclass(frozen=True)
class Constants:
    gamma0: float = EULER_GAMMA
    T0: int = 2445999556029
    T0_prime: float = 15.93
    D: int = 11
    x0: float = 0.99
    x1: float = math.e
    x2: float = 28.99
    x3: float = 6.647e13
    Y0: float = 6.6469e13


CONSTANTS = Constants()


@dataclass(frozen=True)
class PrecisionConfig:
    mode: str = "standard"
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    digits: int = 34

    def __post_init__(self):
        if self.mode not in ("standard", "extended"):
            raise DomainError(f"unknown precision mode {self.mode!r}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.mode == "extended" and self.digits < 30:
            raise DomainError("extended mode needs at least 30 significant digits")

    @property
    def extended(self) -> bool:
        return self.mode == "extended"

    def workdps(self):
        """mpmath working-precision context for extended evaluations."""
        import mpmath

        return mpmath.workdps(self.digits)


STANDARD = PrecisionConfig()
EXTENDED = PrecisionConfig(mode="extended")


def csum(values) -> complex:
    """Compensated sum of a complex (or real) sequence."""
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.ravel()), math.fsum(arr.imag.ravel()))
    return math.fsum(arr.ravel())


class KahanAccumulator:
    """Running Neumaier-compensated sum for streaming accumulation."""

    __slots__ = ("total", "comp")

    def __init__(self, start: float = 0.0):
        self.total = float(start)
        self.comp = 0.0

    def add(self, v: float) -> None:
        t = self.total + v
        if abs(self.total) >= abs(v):
            self.comp += (self.total - t) + v
        else:
            self.comp += (v - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


# ---------------------------------------------------------------- quadrature

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] in ascending order, with matching weights
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_NODES = np.sort(_NODES)
_KW = np.empty(15)
_GW = np.zeros(15)
for _i, _x in enumerate(_NODES):
    _k = int(np.argmin(np.abs(_XGK - abs(_x))))
    _KW[_i] = _WGK[_k]
    if _k % 2 == 1:
        _GW[_i] = _WG[_k // 2]
_GW[7] = _WG[3]

_EPS = np.finfo(float).eps


@dataclass
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    tolerance: float
    intervals: int = 0
    pieces: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be nonnegative")

    @property
    def accepted(self) -> bool:
        return self.error_estimate <= self.tolerance

    @property
    def status(self) -> str:
        return "accepted" if self.accepted else "tolerance not met"

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.evaluations + other.evaluations,
            self.tolerance + other.tolerance,
            self.intervals + other.intervals,
        )

    def scaled(self, c: complex) -> "QuadratureResult":
        return QuadratureResult(self.value * c, self.error_estimate * abs(c), self.evaluations, self.tolerance * abs(c), self.intervals, dict(self.pieces))


def _gk_batch(g, a: np.ndarray, b: np.ndarray, locate):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    u = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(g(u.ravel()), dtype=complex).reshape(u.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        k = np.argwhere(bad)[0]
        where = locate(float(u[k[0], k[1]]))
        raise QuadratureError(f"integrand is not finite at s = {where!r}")
    kron = (vals * _KW).sum(axis=1) * half
    gauss = (vals * _GW).sum(axis=1) * half
    absh = np.abs(half)
    mean = kron / (2 * half)
    resasc = (np.abs(vals - mean[:, None]) * _KW).sum(axis=1) * absh
    resabs = (np.abs(vals) * _KW).sum(axis=1) * absh
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0) & (err > 0), scaled, err)
    err = np.maximum(err, 50 * _EPS * resabs)
    return kron, err


def _adaptive(g, lo: float, hi: float, tol: float, max_evals: int, initial_segments: int, locate) -> QuadratureResult:
    edges = np.linspace(lo, hi, max(1, int(initial_segments)) + 1)
    a, b = edges[:-1], edges[1:]
    width = abs(hi - lo)
    done_a, done_v, done_e = [], [], []
    evals = 0
    while True:
        v, e = _gk_batch(g, a, b, locate)
        evals += 15 * a.size
        share = tol * np.abs(b - a) / width if width > 0 else np.full(a.size, tol)
        tiny = np.abs(b - a) <= 64 * _EPS * max(abs(lo), abs(hi), 1.0)
        keep = (e <= share) | tiny
        total_err = float(e.sum()) + sum(float(x.sum()) for x in done_e)
        out_of_budget = evals + 30 * int((~keep).sum()) > max_evals
        if total_err <= tol or keep.all() or out_of_budget:
            done_a.append(a); done_v.append(v); done_e.append(e)
            break
        done_a.append(a[keep]); done_v.append(v[keep]); done_e.append(e[keep])
        ra, rb = a[~keep], b[~keep]
        m = 0.5 * (ra + rb)
        a = np.concatenate([ra, m])
        b = np.concatenate([m, rb])
    pos = np.concatenate(done_a)
    vals = np.concatenate(done_v)
    errs = np.concatenate(done_e)
    order = np.argsort(pos, kind="stable")
    return QuadratureResult(
        value=csum(vals[order]),
        error_estimate=math.fsum(errs[order]),
        evaluations=evals,
        tolerance=tol,
        intervals=int(pos.size),
    )


def quad_piece(f: Callable, piece: Piece, tol: float, max_evals: int = 10**7, initial_segments: int = 1) -> QuadratureResult:
    """Integrate ``f(s) ds`` along one smooth piece."""

    def g(u):
        return f(piece.point(u)) * piece.deriv(u)

    def locate(u):
        return complex(piece.point(np.array([u]))[0])

    return _adaptive(g, piece.u0, piece.u1, tol, max_evals, initial_segments, locate)


def quad_interval(g: Callable, lo: float, hi: float, tol: float = 1e-10, max_evals: int = 10**7, initial_segments: int = 1) -> QuadratureResult:
    """Integrate a complex-valued ``g(u)`` over the real interval ``[lo, hi]``."""

    def locate(u):
        return complex(u)

    return _adaptive(g, float(lo), float(hi), tol, max_evals, initial_segments, locate)


def quad_line(f: Callable, a: complex, b: complex, tol: float = 1e-10, max_evals: int = 10**7, initial_segments: int = 1) -> QuadratureResult:
    """Integrate ``f`` along the straight segment from ``a`` to ``b``.

    ``f`` receives a complex numpy array of abscissae. Endpoints are never
    evaluated, so integrable endpoint singularities are tolerated.
    """
    return quad_piece(f, segment(a, b), tol, max_evals, initial_segments)


def quad_contour(f: Callable, path: ContourSpec, tol: float = 1e-10, max_evals: int = 10**7, initial_segments: int = 1) -> QuadratureResult:
    """Sum of piecewise quadratures; each piece gets an equal share of ``tol``."""
    share = tol / len(path.pieces)
    total = None
    pieces = {}
    for k, piece in enumerate(path.pieces):
        try:
            r = quad_piece(f, piece, share, max_evals, initial_segments)
        except QuadratureError as exc:
            raise QuadratureError(f"piece {k} ({piece.name}): {exc}") from exc
        pieces[piece.name or str(k)] = r.value
        total = r if total is None else total + r
    total.tolerance = tol
    total.pieces = pieces
    return total


# ---------------------------------------------------------------- Gamma

_B2K = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138]
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_SHIFT = 16.0


def _as_complex(s) -> np.ndarray:
    return np.asarray(s, dtype=complex)


def _check_poles(s: np.ndarray) -> None:
    re = s.real
    hit = (s.imag == 0) & (re <= 0) & (re == np.round(re))
    if hit.any():
        n = int(re[hit].ravel()[0])
        raise PoleError(f"Gamma has a pole at the nonpositive integer {n}")


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    """Principal log Gamma for Re z > 0 via upward shift and Stirling's series."""
    n = np.maximum(0, np.ceil(_SHIFT - z.real)).astype(int)
    nmax = int(n.max()) if n.size else 0
    shift = np.zeros_like(z)
    w = z.copy()
    for k in range(nmax):
        active = n > k
        shift = np.where(active, shift + np.log(w), shift)
        w = np.where(active, w + 1, w)
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    p = inv
    for k, b in enumerate(_B2K, start=1):
        series = series + b / (2 * k * (2 * k - 1)) * p
        p = p * inv2
    return (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series - shift


def loggamma(s):
    """Principal branch of log Gamma for Re s > 0; a logarithm of Gamma elsewhere."""
    z = _as_complex(s)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    _check_poles(z)
    left = z.real <= 0
    out = np.empty_like(z)
    if (~left).any():
        out[~left] = _loggamma_right(z[~left])
    if left.any():
        zl = z[left]
        out[left] = math.log(math.pi) - np.log(np.sin(math.pi * zl)) - _loggamma_right(1 - zl)
    return out[0] if scalar else out


def gamma(s):
    """Gamma function on complex input (scalar or array).

    Uses reflection for Re s <= 0 and a shifted Stirling series otherwise.
    """
    z = _as_complex(s)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    _check_poles(z)
    left = z.real <= 0
    out = np.empty_like(z)
    if (~left).any():
        out[~left] = np.exp(_loggamma_right(z[~left]))
    if left.any():
        zl = z[left]
        out[left] = math.pi / (np.sin(math.pi * zl) * np.exp(_loggamma_right(1 - zl)))
    if scalar:
        v = out[0]
        return complex(v) if v.imag != 0 or np.iscomplexobj(s) else float(v.real)
    return out


def digamma(s):
    """Digamma function Gamma'/Gamma on complex input."""
    z = _as_complex(s)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    _check_poles(z)
    left = z.real < 0.5
    w = np.where(left, 1 - z, z)
    n = np.maximum(0, np.ceil(_SHIFT - w.real)).astype(int)
    acc = np.zeros_like(w)
    for k in range(int(n.max()) if n.size else 0):
        active = n > k
        acc = np.where(active, acc + 1.0 / w, acc)
        w = np.where(active, w + 1, w)
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    p = inv2
    for k, b in enumerate(_B2K, start=1):
        series = series + b / (2 * k) * p
        p = p * inv2
    out = np.log(w) - 0.5 / w - series - acc
    if left.any():
        out = np.where(left, out - math.pi / np.tan(math.pi * np.where(left, z, 0.5)), out)
    return out[0] if scalar else out


def gamma_product(s: complex, n_factors: int = 10**6) -> complex:
    """Weierstrass product for Gamma truncated at ``n_factors`` with tail expansion.

    1/Gamma(s) = s e^{gamma0 s} prod_n (1 + s/n) e^{-s/n}. The tail sum over
    n > N of log(1 + s/n) - s/n is replaced by its expansion in powers of s/n,
    which leaves an error below |s|^5 / N^4.
    """
    s = complex(s)
    n = np.arange(1, n_factors + 1, dtype=float)
    logs = np.log1p(s / n) - s / n
    N = float(n_factors)
    # sum_{n>N} n^-k ~ N^{1-k}/(k-1) - N^-k/2 + k N^{-k-1}/12
    def zeta_tail(k):
        return N ** (1 - k) / (k - 1) - 0.5 * N ** (-k) + k * N ** (-k - 1) / 12

    tail = -s**2 / 2 * zeta_tail(2) + s**3 / 3 * zeta_tail(3) - s**4 / 4 * zeta_tail(4)
    log_inv = np.log(s) + EULER_GAMMA * s + csum(logs) + tail
    return complex(np.exp(-log_inv))


# ---------------------------------------------------------------- Li

def _ei_positive(L: float) -> float:
    """Exponential integral Ei(L) for L > 0 via the all-positive power series."""
    terms = []
    t = 1.0
    n = 1
    peak = 0.0
    while True:
        t *= L / n
        term = t / n
        terms.append(term)
        peak = max(peak, term)
        if n > L and term < 1e-18 * peak:
            break
        n += 1
    return math.fsum([EULER_GAMMA, math.log(L)] + terms)


_LI2 = _ei_positive(math.log(2.0))


def log_integral(x: float) -> float:
    """Offset logarithmic integral Li(x) = int_2^x du/log u."""
    x = float(x)
    if not x >= 2:
        raise DomainError(f"Li(x) requires x >= 2, got {x}")
    if x == 2:
        return 0.0
    return _ei_positive(math.log(x)) - _LI2
