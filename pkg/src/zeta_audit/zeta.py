"""Riemann zeta, its logarithmic derivative, and the completed xi function.

Evaluation is vectorized: every public function accepts a complex scalar or a
numpy array. For Re s > 0 the Euler-Maclaurin expansion is used with
N = max(50, 2|t|) and twelve Bernoulli corrections; the derivative comes from
differentiating the same expansion term by term. For Re s <= 0 the functional
equation maps the point into the right half-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainError, NearSingularityError, PoleError
from .numkernel import digamma, gamma

# B_{2k} / (2k)!, k = 1..13 (the 13th term serves as error estimate)
_B2K = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798,
        -174611 / 330, 854513 / 138, -236364091 / 2730, 8553103 / 6]
_BCOEF = [b / math.factorial(2 * k) for k, b in enumerate(_B2K, start=1)]
N_BERNOULLI = 12
_LOG_2PI = math.log(2 * math.pi)
REG_RADIUS = 0.01
REG_POINTS = 32


@dataclass(frozen=True)
class ZetaEvalReport:
    value: complex
    method: str
    est_error: float

    def __post_init__(self):
        if self.method not in ("dirichlet", "euler_maclaurin", "functional_equation"):
            raise ValueError(f"unknown method {self.method}")
        if not self.est_error >= 0:
            raise ValueError("est_error must be nonnegative")


def _arr(s):
    a = np.asarray(s, dtype=complex)
    return a.ndim == 0, np.atleast_1d(a)


def em_cutoff(t) -> np.ndarray:
    return np.maximum(50, np.ceil(2 * np.abs(t))).astype(np.int64)


def _build_log_tables(size: int):
    """log n split as hi + lo; lo comes from long double where it is wider than double."""
    n = np.maximum(np.arange(0, size, dtype=np.longdouble), 1)
    wide = np.log(n)
    hi = wide.astype(float)
    lo = (wide - hi).astype(float) if np.finfo(np.longdouble).eps < np.finfo(float).eps else np.zeros(size)
    return hi, lo


_LN_TABLE, _LN_LO = _build_log_tables(1 << 16)


def _log_table(N: int) -> tuple:
    global _LN_TABLE, _LN_LO
    if N > _LN_TABLE.size:
        _LN_TABLE, _LN_LO = _build_log_tables(2 * N)
    return _LN_TABLE, _LN_LO


@njit(cache=True)
def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=True)
def _head_sums(sr, si, N, ln, ln_lo, deriv):
    """sum_{n<N} n^{-s} and -sum_{n<N} log(n) n^{-s}, summed from the small end.

    Powers n^{-sigma} are reused across consecutive points sharing sigma. The
    phase t log n is carried as a rounded product plus its exact rounding error
    (and the low part of log n), which keeps the phase error near 1e-16 |t| log n
    down to a few ulps of the phase itself.
    """
    m = sr.size
    out = np.zeros(m, dtype=np.complex128)
    dout = np.zeros(m, dtype=np.complex128)
    pw = np.empty(N)
    last = np.nan
    for i in range(m):
        if sr[i] != last:
            for n in range(1, N):
                pw[n] = math.exp(-sr[i] * ln[n])
            last = sr[i]
        a_re = 0.0
        a_im = 0.0
        d_re = 0.0
        d_im = 0.0
        t = si[i]
        th, tl = _split(t)
        for n in range(N - 1, 0, -1):
            ph = t * ln[n]
            lh, ll = _split(ln[n])
            d = ((th * lh - ph) + th * ll + tl * lh) + tl * ll + t * ln_lo[n]
            cp = math.cos(ph)
            sp = math.sin(ph)
            c = pw[n] * (cp - d * sp)
            s = -pw[n] * (sp + d * cp)
            a_re += c
            a_im += s
            if deriv:
                d_re -= ln[n] * c
                d_im -= ln[n] * s
        out[i] = complex(a_re, a_im)
        dout[i] = complex(d_re, d_im)
    return out, dout


def _em_group(s: np.ndarray, N: int, deriv: bool):
    """Euler-Maclaurin for points sharing the cutoff N. Valid for Re s > 1 - 2*N_BERNOULLI."""
    ln, ln_lo = _log_table(N)
    head, dhead = _head_sums(np.ascontiguousarray(s.real), np.ascontiguousarray(s.imag), N, ln, ln_lo, deriv)
    LN = math.log(N)
    Ns = np.exp(-s * LN)  # N^{-s}
    N1s = N * Ns  # N^{1-s}
    val = head + N1s / (s - 1) + 0.5 * Ns
    dval = None
    if deriv:
        dval = dhead - LN * N1s / (s - 1) - N1s / (s - 1) ** 2 - 0.5 * LN * Ns
    # corrections: c_k * P_k(s) * N^{-s-2k+1}, P_k = s(s+1)...(s+2k-2)
    P = s.copy()
    dP = np.ones_like(s)
    Npow = Ns / N  # N^{-s-1}
    err = None
    for k in range(1, N_BERNOULLI + 2):
        term = _BCOEF[k - 1] * P * Npow
        if k > N_BERNOULLI:
            err = np.abs(term)
            break
        val = val + term
        if deriv:
            dval = dval + _BCOEF[k - 1] * (dP - LN * P) * Npow
        for j in (2 * k - 1, 2 * k):
            dP = dP * (s + j) + P
            P = P * (s + j)
        Npow = Npow / (N * N)
    bound = N ** np.maximum(0.0, 1 - s.real)
    err = err + 2e-16 * bound * np.log(N)
    return val, dval, err


def _em(s: np.ndarray, deriv: bool = False):
    N = em_cutoff(s.imag)
    val = np.empty(s.size, dtype=complex)
    dval = np.empty(s.size, dtype=complex) if deriv else None
    err = np.empty(s.size)
    for n in np.unique(N):
        idx = np.nonzero(N == n)[0]
        v, d, e = _em_group(s[idx], int(n), deriv)
        val[idx] = v
        err[idx] = e
        if deriv:
            dval[idx] = d
    return val, dval, err


def _check_pole(s: np.ndarray) -> None:
    if np.any(s == 1):
        raise PoleError("zeta has a pole at s = 1")


def _circle_mean(fn, centers: np.ndarray, r: float = REG_RADIUS, n: int = REG_POINTS) -> np.ndarray:
    """Cauchy mean value of an analytic function over small circles around ``centers``."""
    ang = np.exp(2j * math.pi * np.arange(n) / n)
    pts = (centers[:, None] + r * ang[None, :]).ravel()
    vals = fn(pts).reshape(centers.size, n)
    return vals.mean(axis=1)


def _zeta_fe(s: np.ndarray) -> np.ndarray:
    """Functional equation for Re s <= 0, s away from 0."""
    w = 1 - s
    zw, _, _ = _em(w)
    return 2.0 ** s * math.pi ** (s - 1) * np.sin(math.pi * s / 2) * gamma(w) * zw


def zeta_values(s):
    """zeta(s) for any s != 1 (vectorized)."""
    scalar, s = _arr(s)
    _check_pole(s)
    out = np.empty(s.size, dtype=complex)
    right = s.real > 0
    if right.any():
        out[right] = _em(s[right])[0]
    left = ~right
    if left.any():
        sl = s[left]
        near0 = np.abs(sl) < 1e-3
        res = np.empty(sl.size, dtype=complex)
        if (~near0).any():
            res[~near0] = _zeta_fe(sl[~near0])
        if near0.any():
            res[near0] = _circle_mean(zeta_values, sl[near0])
        out[left] = res
    return out[0] if scalar else out


def zeta_dirichlet(s: complex, n_terms: int = 10**6) -> complex:
    """Partial Dirichlet sum up to N plus the integral tail N^{1-s}/(s-1).

    The neglected remainder is bounded by N^{1-sigma}/(sigma-1).
    """
    s = complex(s)
    if not s.real > 1:
        raise DomainError(f"Dirichlet series needs Re s > 1, got {s}")
    if n_terms < 10:
        raise DomainError("n_terms must be at least 10")
    re, im = _dirichlet_partial(s.real, s.imag, int(n_terms))
    return complex(re, im) + n_terms ** (1 - s) / (s - 1)


@njit(cache=True)
def _dirichlet_partial(sr, si, N):
    """sum_{n <= N} n^{-s}, smallest terms first, Neumaier-compensated per component."""
    ar = 0.0
    cr = 0.0
    ai = 0.0
    ci = 0.0
    for n in range(N, 0, -1):
        ln = math.log(n)
        w = math.exp(-sr * ln)
        vr = w * math.cos(si * ln)
        vi = -w * math.sin(si * ln)
        t = ar + vr
        if abs(ar) >= abs(vr):
            cr += (ar - t) + vr
        else:
            cr += (vr - t) + ar
        ar = t
        t = ai + vi
        if abs(ai) >= abs(vi):
            ci += (ai - t) + vi
        else:
            ci += (vi - t) + ai
        ai = t
    return ar + cr, ai + ci


def dirichlet_tail_bound(s: complex, n_terms: int) -> float:
    sig = complex(s).real
    return n_terms ** (1 - sig) / (sig - 1)


def zeta_em(s: complex) -> ZetaEvalReport:
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real <= 0:
        raise DomainError(f"Euler-Maclaurin branch needs Re s > 0 (got {s}); use zeta_global")
    v, _, e = _em(np.array([s]))
    return ZetaEvalReport(complex(v[0]), "euler_maclaurin", float(e[0]))


def zeta_em_deriv(s) -> tuple:
    """(zeta(s), zeta'(s), error estimate) from the differentiated expansion, Re s > -20."""
    scalar, s = _arr(s)
    _check_pole(s)
    v, d, e = _em(s, deriv=True)
    if scalar:
        return complex(v[0]), complex(d[0]), float(e[0])
    return v, d, e


def zeta_global(s: complex) -> ZetaEvalReport:
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real > 0:
        return zeta_em(s)
    v = complex(zeta_values(s))
    # near s = 0 the estimate is taken on the regularization circle, away from the pole of zeta(1 - s)
    w = 1 - s if abs(s) >= 1e-3 else 1 - s - REG_RADIUS
    _, _, e = _em(np.array([w]))
    scale = abs(v) if v != 0 else 1.0
    return ZetaEvalReport(v, "functional_equation", float(e[0]) * max(1.0, scale) + 1e-15 * scale)


def zeta(s):
    """Convenience: the value of zeta(s), scalar or array."""
    v = zeta_values(s)
    return complex(v) if np.ndim(v) == 0 else v


def _logderiv_raw(s: np.ndarray) -> np.ndarray:
    out = np.empty(s.size, dtype=complex)
    right = s.real > 0
    if right.any():
        v, d, _ = _em(s[right], deriv=True)
        out[right] = d / v
    left = ~right
    if left.any():
        sl = s[left]
        w = 1 - sl
        v, d, _ = _em(w, deriv=True)
        out[left] = _LOG_2PI + (math.pi / 2) / np.tan(math.pi * sl / 2) - digamma(w) - d / v
    return out


def zeta_logderiv(s, zeros=None):
    """zeta'(s)/zeta(s).

    ``zeros`` (a ZeroList or array of ordinates) enables screening: points within
    0.01 of a critical-line zero raise NearSingularityError.
    """
    scalar, s = _arr(s)
    _check_pole(s)
    if zeros is not None:
        screen_zeros(s, zeros)
    trivial = (s.imag == 0) & (s.real < 0) & (s.real % 2 == 0)
    if trivial.any():
        raise NearSingularityError(f"zeta has a trivial zero at s = {s[trivial][0].real:g}")
    out = np.empty(s.size, dtype=complex)
    near0 = (np.abs(s) < 1e-3) & (s.real <= 0)
    if (~near0).any():
        out[~near0] = _logderiv_raw(s[~near0])
    if near0.any():
        out[near0] = _circle_mean(_logderiv_raw, s[near0])
    bad = ~np.isfinite(out)
    if bad.any():
        raise NearSingularityError(f"zeta'/zeta is not finite at s = {s[bad][0]!r}")
    return complex(out[0]) if scalar else out


def screen_zeros(s: np.ndarray, zeros, radius: float = 0.01) -> None:
    gam = np.asarray(getattr(zeros, "ordinates", zeros), dtype=float)
    if gam.size == 0:
        return
    close = np.abs(s.real - 0.5) < radius
    if not close.any():
        return
    t = np.abs(s.imag[close])
    idx = np.clip(np.searchsorted(gam, t), 1, gam.size - 1)
    d = np.minimum(np.abs(gam[idx] - t), np.abs(gam[idx - 1] - t))
    if gam.size == 1:
        d = np.abs(gam[0] - t)
    dist = np.hypot(d, s.real[close] - 0.5)
    if (dist < radius).any():
        bad = s[close][dist < radius][0]
        raise NearSingularityError(f"s = {bad!r} lies within {radius} of a zero of zeta")


def _xi_raw(s: np.ndarray) -> np.ndarray:
    """xi for Re s >= 1/2 and s away from 1."""
    z = zeta_values(s)
    return np.exp(-s / 2 * math.log(math.pi)) * gamma(s / 2 + 1) * (s - 1) * z


def _xi_right(s: np.ndarray) -> np.ndarray:
    out = np.empty(s.size, dtype=complex)
    near1 = np.abs(s - 1) < 1e-3
    if (~near1).any():
        out[~near1] = _xi_raw(s[~near1])
    if near1.any():
        out[near1] = _circle_mean(_xi_raw, s[near1])
    return out


def xi(s):
    """Completed zeta pi^{-s/2} (s/2) Gamma(s/2) (s-1) zeta(s); entire."""
    scalar, s = _arr(s)
    left = s.real < 0.5
    out = np.empty(s.size, dtype=complex)
    if (~left).any():
        out[~left] = _xi_right(s[~left])
    if left.any():
        out[left] = _xi_right(1 - s[left])
    return complex(out[0]) if scalar else out


def xi_logderiv(s, zeros=None):
    """xi'(s)/xi(s) = -log(pi)/2 + 1/s + digamma(s/2)/2 + 1/(s-1) + zeta'/zeta(s)."""
    scalar, s = _arr(s)
    left = s.real < 0.5
    w = np.where(left, 1 - s, s)
    v = -0.5 * math.log(math.pi) + 1 / w + 0.5 * digamma(w / 2) + 1 / (w - 1) + zeta_logderiv(w, zeros)
    v = np.where(left, -v, v)
    return complex(v[0]) if scalar else v


def zeta_extended(s: complex, dps: int = 34) -> complex:
    """Independent high-precision zeta (mpmath) used to confirm audit violations."""
    import mpmath

    with mpmath.workdps(dps):
        return complex(mpmath.zeta(mpmath.mpc(complex(s))))


def zeta_extended_abs(s: complex, dps: int = 34):
    import mpmath

    with mpmath.workdps(dps):
        return abs(mpmath.zeta(mpmath.mpc(complex(s))))
