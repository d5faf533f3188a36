"""Perron kernels, the Dirichlet series Z(s) = -zeta'/zeta - zeta, contour ledgers.

Orientation conventions used throughout:

* ``M``: the segment ``m - iT -> m + iT``.
* ``L``: left half of ``|s - m| = T``, counter-clockwise from ``m + iT`` to ``m - iT``.
* ``R``: right half of the same circle, clockwise from ``m + iT`` to ``m - iT``.

With ``T > m`` the loop ``L - R`` winds once around the origin, which is what
makes ``int_L - int_R`` of ``v^s ds/s`` equal to ``2 pi i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .contours import ContourSpec, left_half_circle, polar, right_half_circle
from .errors import ConventionError, CoverageError, DomainError
from .numkernel import QuadratureResult, csum, quad_contour, quad_interval
from .zeta import _arr, _circle_mean, _logderiv_raw, zeta_logderiv, zeta_values
from .zerodata import ZeroList

TWO_PI_I = 2j * math.pi
DIRECT_ARC_LIMIT = 1e8  # largest |x^s| on R for which the J3 arc is integrated directly
BAND_COEFF = 9.0  # |varpi(u)| <= 9 u^{1/2} log^2 u, used for tail bounds


# ---------------------------------------------------------------- kernels


def heaviside(alpha: float, v: float) -> float:
    """Step at ``alpha`` with the midpoint value 1/2."""
    if not (alpha > 0 and v > 0):
        raise DomainError("heaviside needs alpha > 0 and v > 0")
    if v < alpha:
        return 0.0
    if v == alpha:
        return 0.5
    return 1.0


def _check_kernel_args(v, m, T_check):
    if not v > 0:
        raise DomainError("v must be positive")
    if not m > 0.5:
        raise DomainError("m must exceed 1/2")
    if not T_check > 0:
        raise DomainError("T_check must be positive")


def delta_T(v: float, m: float, T_check: float, tol: float = 1e-11) -> QuadratureResult:
    """(1/2 pi i) int_M v^s/s ds, folded onto [0, T] by conjugate symmetry."""
    _check_kernel_args(v, m, T_check)
    lv = math.log(v)

    def g(t):
        s = m + 1j * t
        return (np.exp(s * lv) / s).real / math.pi + 0j

    segs = max(2, math.ceil(T_check * abs(lv) / math.pi))
    out = quad_interval(g, 0.0, T_check, tol, initial_segments=segs)
    out.value = out.value.real
    return out


def delta_E(v: float, m: float, T_check: float, tol: float = 1e-11) -> QuadratureResult:
    """The complementary arc: H_1(v) = delta_T + delta_E.

    v < 1 integrates over R, v > 1 over L; v = 1 is the closed arctangent form.
    """
    _check_kernel_args(v, m, T_check)
    if v == 1:
        val = (math.pi / 2 - math.atan(T_check / m)) / math.pi
        return QuadratureResult(val, 0.0, 0, tol)
    lv = math.log(v)
    path = right_half_circle(m, T_check) if v < 1 else left_half_circle(m, T_check)
    segs = max(4, math.ceil(T_check * abs(lv)))
    r = quad_contour(lambda s: np.exp(s * lv) / s, path, tol * 2 * math.pi, initial_segments=segs)
    out = r.scaled(1 / TWO_PI_I)
    out.value = out.value.real
    return out


# ---------------------------------------------------------------- Z(s)


def _z_raw(s: np.ndarray) -> np.ndarray:
    return -_logderiv_raw(s) - zeta_values(s)


def Z(s, zeros=None):
    """-zeta'(s)/zeta(s) - zeta(s); the removable point s = 1 is filled by a Cauchy mean."""
    scalar, s = _arr(s)
    out = np.empty(s.size, dtype=complex)
    near1 = np.abs(s - 1) < 1e-3
    far = ~near1
    if far.any():
        out[far] = -np.atleast_1d(zeta_logderiv(s[far], zeros)) - np.atleast_1d(zeta_values(s[far]))
    if near1.any():
        out[near1] = _circle_mean(_z_raw, s[near1])
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------- A, B, C


@dataclass(frozen=True)
class ABCSums:
    A: complex
    B: complex
    C: complex
    A_y: complex
    B_tail: complex | None = None
    tail_bound: float | None = None


def _require_nonlattice(**vals):
    for name, v in vals.items():
        if float(v) == math.floor(v):
            raise ConventionError(f"{name} = {v} is an integer; the sums are defined for non-integer abscissae")


def _terms(table, lo: int, hi: int, s: complex) -> np.ndarray:
    n = np.arange(lo, hi + 1)
    return (table.lam[lo:hi + 1] - 1.0) * np.exp(-s * np.log(n.astype(float)))


def band_tail_integral(U: float, sigma: float) -> float:
    """9 int_U^inf u^{1/2 - sigma - 1} log^2 u du in closed form (needs sigma > 1/2)."""
    a = sigma - 0.5
    if not a > 0:
        raise DomainError("tail bound needs Re s > 1/2")
    L = math.log(U)
    return BAND_COEFF * U ** (-a) * (L * L / a + 2 * L / a ** 2 + 2 / a ** 3)


def abc_sums(x: float, y: float, s: complex, table=None) -> ABCSums:
    """A(x) = sum_{n<x}, C = sum_{y<n<x} of (Lambda(n) - 1) n^{-s}, and B(x) = Z(s) - A(x).

    For Re s >= 1.5 the direct tail sum_{x<n<=N} over the sieve range is returned
    as ``B_tail`` together with a bound on the part beyond the sieve limit.
    """
    x, y, s = float(x), float(y), complex(s)
    if not 0 < y < x:
        raise DomainError("need 0 < y < x")
    _require_nonlattice(x=x, y=y)
    tab = arith.sieve_for(x, table)
    X, Y = math.floor(x), math.floor(y)
    tx = _terms(tab, 1, X, s)
    A = csum(tx)
    A_y = csum(tx[:Y])
    C = csum(tx[Y:])
    B = complex(Z(s)) - A
    B_tail = bound = None
    if s.real >= 1.5:
        N = tab.limit
        B_tail = csum(_terms(tab, X + 1, N, s))
        vN = abs(float(tab.cum_varpi[N]))
        bound = vN * N ** (-s.real) + abs(s) * band_tail_integral(N, s.real)
    return ABCSums(A, B, C, A_y, B_tail, bound)


# ---------------------------------------------------------------- varpi reconstructions


def _fold_segment(f, m: float, T: float, tol: float, segs: int) -> QuadratureResult:
    """(1/2 pi i) int_{m-iT}^{m+iT} f(s) ds for f with f(conj s) = conj f(s)."""

    def g(t):
        return f(m + 1j * t).real / math.pi + 0j

    out = quad_interval(g, 0.0, T, tol, initial_segments=segs)
    out.value = out.value.real
    return out


def varpi_via_perron(x: float, m: float, T: float, tol: float = 1e-6, experimental: bool = False) -> QuadratureResult:
    """Truncated Perron integral (1/2 pi i) int_{m-iT}^{m+iT} x^s Z(s)/s ds.

    ``m`` in (1, 2] is the absolutely convergent case. Abscissae 1/2 < m <= 1
    are accepted only with ``experimental=True``; the output is then a
    measurement, not a reconstruction with known error.
    """
    x, m, T = float(x), float(m), float(T)
    _require_nonlattice(x=x)
    if not x > 1:
        raise DomainError("x must exceed 1")
    if not 1 < m <= 2:
        if not (experimental and 0.5 < m <= 1):
            raise DomainError(f"m = {m} outside (1, 2]; pass experimental=True for 1/2 < m <= 1")
    if T < 50:
        raise DomainError("T must be at least 50")
    lx = math.log(x)
    segs = max(8, math.ceil(T * lx / math.pi))
    return _fold_segment(lambda s: np.exp(s * lx) * Z(s) / s, m, T, tol, segs)


def explicit_formula_psi(x: float, zl: ZeroList | None, T: float) -> float:
    """x - sum_{|gamma| <= T} x^rho/rho - log 2 pi - log(1 - x^{-2})/2 over critical-line zeros."""
    x, T = float(x), float(T)
    if not x > 2:
        raise DomainError("x must exceed 2")
    _require_nonlattice(x=x)
    main = [x, -math.log(2 * math.pi), -0.5 * math.log1p(-x ** -2.0)]
    if T <= 0:
        return math.fsum(main)
    if zl is None or T > zl.last:
        raise CoverageError(f"T = {T} exceeds the loaded zero data")
    g = zl.ordinates[zl.ordinates <= T]
    rho = 0.5 + 1j * g
    contrib = 2.0 * (np.exp(rho * math.log(x)) / rho).real
    return math.fsum(main + (-contrib).tolist())


# ---------------------------------------------------------------- W ledger


@dataclass
class PerronLedger:
    x: float
    y: float
    m: float
    T_check: float
    W1: complex
    W2: complex
    W3: complex
    W4: complex
    W5: complex
    W6: complex
    W15: complex
    W64: complex
    W_tilde: float
    JT1: complex
    JT2: complex
    JT2_double: complex
    JT3: complex
    JT3_0: complex | None
    varpi1_diff: float | None
    residue_25: complex
    residue_36: complex
    varpi_x: float
    varpi_y: float
    varpi_343: float | None
    errors: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def residue_error(self) -> float:
        return max(abs(self.residue_25 - TWO_PI_I), abs(self.residue_36 - TWO_PI_I))


def _w_integral(v: float, path: ContourSpec, tol: float, name: str) -> QuadratureResult:
    lv = math.log(v)
    T = path.params["T_check"]
    segs = max(4, math.ceil(T * abs(lv)) + 4)
    try:
        return quad_contour(lambda s: np.exp(s * lv) / s, path, tol, initial_segments=segs)
    except Exception as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def w_ledger(x: float, y: float, m: float, T_check: float, tol: float = 1e-9, with_zeta: bool = True, table=None,
             with_sums: bool = True) -> PerronLedger:
    """All six W integrals on the halves of |s - m| = T_check, plus derived terms.

    Y = floor(y) and X = floor(x). The factor varpi(Y) of the decomposition is the
    full sum over n <= Y, i.e. varpi(y) for non-integer y. ``JT3_0`` and
    ``varpi1_diff`` need Z and are skipped (None) when ``with_zeta`` is false.
    With ``with_sums`` false no sieve is consulted: the varpi values and the J
    terms are NaN, which allows y far beyond any sieve.
    """
    x, y, m, T_check = float(x), float(y), float(m), float(T_check)
    if not 0 < y < x:
        raise DomainError("need 0 < y < x")
    _require_nonlattice(x=x, y=y)
    if not T_check > m > 0:
        raise DomainError("need T_check > m > 0 so that the circle encloses the origin")
    Y = math.floor(y)
    if Y < 1:
        raise DomainError("need y > 1")
    L, R = left_half_circle(m, T_check), right_half_circle(m, T_check)
    spec = {
        "W1": (x / Y, L), "W2": (y / Y, L), "W3": (x / (Y + 1), L),
        "W4": (y / (Y + 1), R), "W5": (y / Y, R), "W6": (x / (Y + 1), R),
    }
    res = {k: _w_integral(v, path, tol, k) for k, (v, path) in spec.items()}
    W = {k: r.value for k, r in res.items()}
    errors = {k: r.error_estimate for k, r in res.items()}
    W15 = W["W1"] - W["W5"]
    W64 = W["W6"] - W["W4"]
    W_tilde = (W15 - W64).imag
    if with_sums:
        vy = arith.varpi(y, table)
        vx = arith.varpi(x, table)
    elif with_zeta:
        raise DomainError("the zeta terms need the sieve sums")
    else:
        vy = vx = math.nan
    notes = []
    JT3_0 = varpi1 = v343 = None
    if with_zeta:
        lx, ly = math.log(x), math.log(y)

        def j0(s):
            return (np.exp(s * lx) - np.exp(s * ly)) / s * Z(s)

        r1 = _fold_segment(j0, m, T_check, tol, max(8, math.ceil(T_check * lx / math.pi)))
        varpi1 = float(r1.value)
        errors["varpi1_diff"] = r1.error_estimate
        scale = x ** (m + T_check)
        if scale <= DIRECT_ARC_LIMIT:
            r0 = quad_contour(j0, R, tol * scale, initial_segments=max(8, math.ceil(T_check * lx)))
            JT3_0 = r0.value
            errors["JT3_0"] = r0.error_estimate
            notes.append("JT3_0 by quadrature on R")
        else:
            # Z is analytic between M and R (no zeros right of the critical line at these
            # heights, s = 1 removable), so int_R = -int_M.
            JT3_0 = -TWO_PI_I * varpi1
            errors["JT3_0"] = 2 * math.pi * r1.error_estimate
            notes.append("JT3_0 from the segment M by Cauchy's theorem; direct quadrature on R would lose all digits")
        d = 2 * math.pi - W_tilde
        v343 = (1 + W_tilde / d) * varpi1 + JT3_0.imag / d - (1 - W_tilde / d) * vy
    return PerronLedger(
        x, y, m, T_check, W["W1"], W["W2"], W["W3"], W["W4"], W["W5"], W["W6"],
        W15, W64, W_tilde,
        JT1=vy * (W["W1"] - W["W2"]),
        JT2=vy * (W["W3"] - W["W4"]),
        JT2_double=vx * W15,
        JT3=vx * W64,
        JT3_0=JT3_0,
        varpi1_diff=varpi1,
        residue_25=W["W2"] - W["W5"],
        residue_36=W["W3"] - W["W6"],
        varpi_x=vx,
        varpi_y=vy,
        varpi_343=v343,
        errors=errors,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------- polar composite contour


def polar_angles(m: float, T_check: float, y: float, a_left: float, a_right: float) -> dict:
    """Radii and angles of the keyhole pair: big circle |s| = r through m +- iT, left
    line Re s = -a_left with a small arc of radius r_small, right line Re s = m + a_right."""
    r = math.hypot(m, T_check)
    r_small = 2 * y * y * a_left / (2 * y * y - 1)
    ang = {
        "r": r,
        "r_small": r_small,
        "theta_0": math.asin(m / r),
        "theta_L": math.asin(a_left / r),
        # a_left / r_small = 1 - 1/(2y^2) rounds to 1 for large y; use the complement instead
        "theta_l": math.pi / 2 - math.asin(math.sqrt(4 * y * y - 1) / (2 * y * y)),
        "theta_R": math.asin(min(1.0, (m + a_right) / r)),
    }
    order = (math.pi / 2 > ang["theta_l"] > ang["theta_R"] > ang["theta_0"] > ang["theta_L"] > 0)
    if not order:
        raise DomainError(
            "angle ordering pi/2 > theta_l > theta_R > theta_0 > theta_L > 0 violated: "
            + ", ".join(f"{k}={v:.6g}" for k, v in ang.items())
        )
    return ang


def _const(c):
    return lambda th: np.full(np.shape(th), c, dtype=float)


def _vline(c):
    """r(theta) = c / cos(theta): the vertical line Re s = c."""
    return (lambda th: c / np.cos(th)), (lambda th: c * np.sin(th) / np.cos(th) ** 2)


def polar_composite(m: float, T_check: float, y: float, a_left: float, a_right: float) -> ContourSpec:
    """Closed counter-clockwise loop A, G, C, H, B (left) then E, F, D (right), theta increasing.

    The left pieces reproduce L (from m + iT to m - iT); the right pieces run from
    m - iT back up to m + iT, i.e. R reversed.
    """
    a = polar_angles(m, T_check, y, a_left, a_right)
    r, rs = a["r"], a["r_small"]
    t0, tL, tl, tR = a["theta_0"], a["theta_L"], a["theta_l"], a["theta_R"]
    h = math.pi / 2
    gl, dgl = _vline(-a_left)
    fr, dfr = _vline(m + a_right)
    zero = _const(0.0)
    pieces = (
        polar(_const(r), zero, h - t0, h + tL, "A"),
        polar(gl, dgl, h + tL, h + tl, "G"),
        polar(_const(rs), zero, h + tl, 3 * h - tl, "C"),
        polar(gl, dgl, 3 * h - tl, 3 * h - tL, "H"),
        polar(_const(r), zero, 3 * h - tL, 3 * h + t0, "B"),
        polar(_const(r), zero, 3 * h + t0, 3 * h + tR, "E"),
        polar(fr, dfr, 3 * h + tR, 5 * h - tR, "F"),
        polar(_const(r), zero, 5 * h - tR, 5 * h - t0, "D"),
    )
    params = dict(a, m=m, T_check=T_check, y=y, a_left=a_left, a_right=a_right, left=("A", "G", "C", "H", "B"), right=("E", "F", "D"))
    return ContourSpec("polar_composite", pieces, params)


@dataclass
class PolarPieces:
    pieces: dict
    sub_pieces: dict
    total: complex
    W15_direct: complex
    mismatch: float
    errors: dict
    params: dict


def _piece_integral(lv, radius, tan_part, lo, hi, part, tol):
    """int v^{s(theta)} (i and/or r'/r) d theta with s = radius(theta) e^{i theta}."""

    def g(th):
        s = radius(th) * np.exp(1j * th)
        w = np.exp(s * lv)
        if part == "i":
            return 1j * w
        if part == "tan":
            return w * tan_part(th) if tan_part is not None else np.zeros_like(w)
        return w * (1j + (tan_part(th) if tan_part is not None else 0.0))

    segs = max(2, math.ceil(abs(hi - lo) * 8))
    return quad_interval(g, lo, hi, tol, initial_segments=segs)


def polar_w15_pieces(x: float, y: float, spec: ContourSpec, tol: float = 1e-10, only=None) -> PolarPieces:
    """Evaluate every named piece of W15 on the keyhole pair in theta.

    Left pieces carry the base x/Y and right pieces y/Y, matching W1 and W5.
    Each piece is integrated with ds/s = (i + r'/r) d theta, theta increasing, so
    the top-level pieces add up to W15. Sub-pieces split G, H and F: M, 1, 2, N and
    W'_C keep the full integrand, while the A/C and B/D pairs are the i-part and
    the tan-part of the same interval. ``only`` restricts the work to the named
    pieces; the total and the direct comparison are then left as NaN.
    """
    if spec.kind != "polar_composite":
        raise DomainError("spec must be a polar_composite contour")
    p = spec.params
    x, y = float(x), float(y)
    _require_nonlattice(y=y)
    m, T_check = p["m"], p["T_check"]
    Y = math.floor(y)
    lvL, lvR = math.log1p((x - Y) / Y), math.log1p((y - Y) / Y)
    r, rs = p["r"], p["r_small"]
    t0, tL, tl, tR = p["theta_0"], p["theta_L"], p["theta_l"], p["theta_R"]
    h = math.pi / 2
    big, small = _const(r), _const(rs)
    left_r = lambda th: -p["a_left"] / np.cos(th)  # noqa: E731
    right_r = lambda th: (m + p["a_right"]) / np.cos(th)  # noqa: E731
    tan = np.tan

    top = {
        "A": (lvL, big, None, h - t0, h + tL),
        "G": (lvL, left_r, tan, h + tL, h + tl),
        "C": (lvL, small, None, h + tl, 3 * h - tl),
        "H": (lvL, left_r, tan, 3 * h - tl, 3 * h - tL),
        "B": (lvL, big, None, 3 * h - tL, 3 * h + t0),
        "E": (lvR, big, None, 3 * h + t0, 3 * h + tR),
        "F": (lvR, right_r, tan, 3 * h + tR, 5 * h - tR),
        "D": (lvR, big, None, 5 * h - tR, 5 * h - t0),
    }
    sub = {
        "M": (lvL, left_r, tan, h + tL, h + t0, "full"),
        "1": (lvL, left_r, tan, h + t0, h + tR, "full"),
        "A_L": (lvL, left_r, tan, h + tR, h + tl, "i"),
        "C_L": (lvL, left_r, tan, h + tR, h + tl, "tan"),
        "B_L": (lvL, left_r, tan, 3 * h - tl, 3 * h - tR, "i"),
        "D_L": (lvL, left_r, tan, 3 * h - tl, 3 * h - tR, "tan"),
        "2": (lvL, left_r, tan, 3 * h - tR, 3 * h - t0, "full"),
        "N": (lvL, left_r, tan, 3 * h - t0, 3 * h - tL, "full"),
        "B_R": (lvR, right_r, tan, 3 * h + tR, 3 * h + tl, "i"),
        "D_R": (lvR, right_r, tan, 3 * h + tR, 3 * h + tl, "tan"),
        "W'_C": (lvR, right_r, tan, 3 * h + tl, 5 * h - tl, "full"),
        "A_R": (lvR, right_r, tan, 5 * h - tl, 5 * h - tR, "i"),
        "C_R": (lvR, right_r, tan, 5 * h - tl, 5 * h - tR, "tan"),
    }
    if only is not None:
        only = set(only)
        unknown = only - set(top) - set(sub)
        if unknown:
            raise DomainError(f"unknown pieces {sorted(unknown)}")
        top = {k: v for k, v in top.items() if k in only}
        sub = {k: v for k, v in sub.items() if k in only}
    share = tol / (len(top) + len(sub))
    vals, errs = {}, {}
    for name, (lv, rad, tp, lo, hi) in top.items():
        q = _piece_integral(lv, rad, tp, lo, hi, "full", share)
        vals[name], errs[name] = q.value, q.error_estimate
    subs = {}
    for name, (lv, rad, tp, lo, hi, part) in sub.items():
        q = _piece_integral(lv, rad, tp, lo, hi, part, share)
        subs[name], errs[name] = q.value, q.error_estimate
    if only is not None:
        nan = complex(math.nan, math.nan)
        return PolarPieces(vals, subs, nan, nan, math.nan, errs, dict(p))
    total = csum([vals[k] for k in top])
    W1 = _w_integral(x / Y, left_half_circle(m, T_check), share, "W1").value
    W5 = _w_integral(y / Y, right_half_circle(m, T_check), share, "W5").value
    direct = W1 - W5
    return PolarPieces(vals, subs, total, direct, abs(total - direct), errs, dict(p))


# ---------------------------------------------------------------- Mellin identity


@dataclass(frozen=True)
class MellinCheck:
    s: complex
    U: int
    lhs: complex
    Z: complex
    residual: float
    tail_bound: float
    certified: bool


def mellin_identity_check(s: complex, U: int, table=None) -> MellinCheck:
    """Compare s int_1^U varpi(u) u^{-s-1} du (plus a tail bound) with Z(s).

    varpi is constant on each (k, k+1), so the integral over that interval is
    exactly varpi(k+) (k^{-s} - (k+1)^{-s}) / s. Re s > 1 is the certified
    branch; 1/2 < Re s <= 1 is reported as a measurement only.
    """
    s = complex(s)
    U = int(U)
    if not s.real > 0.5:
        raise DomainError("the identity is examined for Re s > 1/2")
    if U < 30:
        raise DomainError("U must be at least 30")
    tab = arith.sieve_for(U, table)
    pw = np.exp(-s * np.log(np.arange(1, U + 1, dtype=float)))
    right = tab.cum_varpi[1:U]
    lhs = csum(right * (pw[:-1] - pw[1:]))
    zs = complex(Z(s))
    tail = abs(s) * band_tail_integral(U, s.real)
    return MellinCheck(s, U, lhs, zs, abs(lhs - zs), tail, s.real > 1)


# ---------------------------------------------------------------- elementary bounds


def power_difference_bound(u: float, v: float, s: complex) -> tuple[float, float]:
    """(|(v^s - u^s)/s|, (v - u) u^{sigma - 1}) for 0 < u < v and sigma < 1."""
    s = complex(s)
    if not 0 < u < v:
        raise DomainError("need 0 < u < v")
    if not s.real < 1:
        raise DomainError("the bound is stated for Re s < 1")
    lhs = math.log(v / u) if s == 0 else abs((complex(v) ** s - complex(u) ** s) / s)
    return lhs, (v - u) * u ** (s.real - 1)


def circle_moduli(m: float, T_check: float, n: int = 50) -> np.ndarray:
    """|s| at n equally spaced points of |s - m| = T_check."""
    th = 2 * math.pi * np.arange(n) / n
    return np.abs(m + T_check * np.exp(1j * th))
