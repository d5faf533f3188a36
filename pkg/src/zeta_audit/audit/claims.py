"""Registry of explicit numeric claims and their grid evaluators.

Each claim states an inequality lhs <= rhs (or lhs < rhs) over a region and is
checked point by point with one of the package engines. Violations are re-run
through an independent evaluator (mpmath, or a plain prime sieve) before they
are reported. The ``anchor`` of a claim is the inequality as printed, so a
report can be read without any other document.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .. import arith, perron
from ..errors import CoverageError, DomainError, UnknownClaimError
from ..numkernel import CONSTANTS, EULER_GAMMA, STANDARD, PrecisionConfig, gamma, log_integral
from ..zerodata import ZeroList, associate, backlund_band, count_zeros, count_zeros_density, load_zeros, threshold_H
from ..zeta import zeta_dirichlet, zeta_extended_abs, zeta_logderiv, zeta_values, xi_logderiv
from .report import AuditReport, grade

BOX_DEFAULT = 101
RANGE_DEFAULT = 10_000
X_RANGE_TOP = 10**7
ZETA_REL_ERR = 1e-11


def default_zeros_path(flag: str | None = None) -> Path:
    """Flag first, then $ZETA_AUDIT_ZEROS, then ./zeros.txt."""
    if flag:
        return Path(flag)
    env = os.environ.get("ZETA_AUDIT_ZEROS")
    if env:
        return Path(env)
    return Path("zeros.txt")


@dataclass
class AuditContext:
    resolution: int | None = None
    precision: PrecisionConfig = STANDARD
    sieve_limit: int = X_RANGE_TOP
    zeros_path: str | None = None
    zeros: ZeroList | None = None

    def __post_init__(self):
        if self.resolution is not None and self.resolution < 3:
            raise DomainError("resolution must be at least 3 points per axis")

    def box(self) -> int:
        return self.resolution or BOX_DEFAULT

    def range_points(self) -> int:
        return self.resolution or RANGE_DEFAULT

    def zero_list(self) -> ZeroList:
        if self.zeros is None:
            self.zeros = load_zeros(default_zeros_path(self.zeros_path))
        return self.zeros

    def x_top(self, want: float) -> tuple:
        """Upper end of an x-range clipped to the sieve limit, with a note if clipped."""
        if want <= self.sieve_limit:
            return want, ()
        return float(self.sieve_limit), (f"x-range clipped from {want:g} to the sieve limit {self.sieve_limit}",)

    def table(self, x_hi: float):
        prev = arith.default_limit()
        arith.set_default_limit(self.sieve_limit)
        try:
            return arith.sieve_for(x_hi)
        finally:
            arith.set_default_limit(prev)


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    region: str
    anchor: str
    evaluate: Callable[[AuditContext], AuditReport]
    needs_zeros: bool = False
    tags: tuple = field(default=())


REGISTRY: dict[str, Claim] = {}


def register(id: str, description: str, region: str, anchor: str, needs_zeros: bool = False):
    def deco(fn):
        REGISTRY[id] = Claim(id, description, region, anchor, fn, needs_zeros)
        return fn

    return deco


def claim_ids() -> list:
    return list(REGISTRY)


def get_claim(id: str) -> Claim:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownClaimError(f"unknown claim {id!r}; known: {', '.join(REGISTRY)}") from None


def run_claim(id: str, resolution: int | None = None, ctx: AuditContext | None = None) -> AuditReport:
    """Evaluate a registered claim on its grid (``resolution`` points per axis)."""
    claim = get_claim(id)
    if ctx is None:
        ctx = AuditContext(resolution=resolution)
    elif resolution is not None:
        ctx.resolution = resolution
        ctx.__post_init__()
    return claim.evaluate(ctx)


def _grade(claim_id: str, ctx: AuditContext, grid: str, points, lhs, rhs, err, **kw) -> AuditReport:
    c = REGISTRY[claim_id]
    kw.setdefault("resolve_indeterminate", ctx.precision.extended)
    return grade(claim_id, c.anchor, grid, points, lhs, rhs, err, **kw)


# ---------------------------------------------------------------- helpers


def _box(sig_lo, sig_hi, t_lo, t_hi, n, open_left=False):
    sig = np.linspace(sig_lo, sig_hi, n + 1)[1:] if open_left else np.linspace(sig_lo, sig_hi, n)
    t = np.linspace(t_lo, t_hi, n)
    S = (sig[:, None] + 1j * t[None, :]).ravel()
    return S, f"{n}x{n} box sigma in [{sig[0]:g}, {sig[-1]:g}], t in [{t_lo:g}, {t_hi:g}]"


def _spoints(S):
    return [{"sigma": float(s.real), "t": float(s.imag)} for s in S]


def _abs_zeta(S):
    lhs = np.full(S.size, np.nan)
    ok = S != 1
    lhs[ok] = np.abs(zeta_values(S[ok]))
    return lhs


def _safe(fn, S):
    """Vectorized evaluation, falling back to per-point so one bad point costs only itself."""
    try:
        return np.asarray(fn(S))
    except Exception:  # noqa: BLE001
        out = np.full(S.size, np.nan, dtype=complex)
        for i, s in enumerate(S):
            try:
                out[i] = complex(fn(np.array([s]))[0])
            except Exception:  # noqa: BLE001
                pass
        return out


def _mp_zeta_abs(S, dps):
    def oracle(i):
        v = float(zeta_extended_abs(complex(S[i]), dps))
        return v, v * 1e-25
    return oracle


def _mp_logderiv_abs(S, dps):
    import mpmath

    def oracle(i):
        with mpmath.workdps(dps):
            s = mpmath.mpc(complex(S[i]))
            v = abs(mpmath.zeta(s, 1, 1) / mpmath.zeta(s))
        return float(v), float(v) * 1e-25
    return oracle


def _xgrid(lo, hi, n):
    return np.geomspace(lo, hi, n)


def _xpoints(x):
    return [{"x": float(v)} for v in x]


def _psi_oracle(x: float) -> float:
    """psi(x) from a plain Eratosthenes sieve, independent of the package sieve."""
    n = int(math.floor(x))
    if n < 2:
        return 0.0
    mark = np.ones(n + 1, dtype=bool)
    mark[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if mark[p]:
            mark[p * p::p] = False
    primes = np.nonzero(mark)[0]
    k = np.floor(np.log(n) / np.log(primes) + 1e-12)
    while True:  # guard against floor(log n / log p) rounding down at exact powers
        up = primes.astype(float) ** (k + 1) <= n
        if not up.any():
            break
        k = k + up
    terms = k * np.log(primes)
    total = math.fsum(terms)
    if x == n and n >= 2:
        # half weight at an integer that is a prime power
        f = _prime_power_log(n)
        total -= 0.5 * f
    return total


def _prime_power_log(n: int) -> float:
    for p in range(2, int(n**0.5) + 2):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n)


def _count_ones(x: float) -> float:
    k = math.floor(x)
    return k - 0.5 if x == k else float(k)


# ---------------------------------------------------------------- zeta boxes


@register("P1-box", "|zeta(s)| bounded by 1.621 on a box around the real segment [0, 1]",
          "-0.001 <= sigma <= 1.001, |t| <= 0.501",
          "|zeta(s)| <= B = 1.621 for -0.001 <= sigma <= 1.001 and |t| <= 0.501")
def _p1_box(ctx):
    S, grid = _box(-0.001, 1.001, -0.501, 0.501, ctx.box())
    lhs = _abs_zeta(S)
    return _grade("P1-box", ctx, grid, _spoints(S), lhs, 1.621, ZETA_REL_ERR * np.nan_to_num(lhs, nan=1.0),
                  oracle=_mp_zeta_abs(S, ctx.precision.digits),
                  notes=("violations confirmed with mpmath zeta at extended precision",
                         "the box contains the pole at s = 1, so the bound cannot hold near it"))


@register("P1-inner", "|zeta(s)| bounded by 3.62 on the right half of the same box",
          "1/2 <= sigma <= 1.001, |t| <= 0.501",
          "|zeta(s)| <= 3.62 for 1/2 <= sigma <= 1.001 and |t| <= 0.501")
def _p1_inner(ctx):
    S, grid = _box(0.5, 1.001, -0.501, 0.501, ctx.box())
    lhs = _abs_zeta(S)
    return _grade("P1-inner", ctx, grid, _spoints(S), lhs, 3.62, ZETA_REL_ERR * np.nan_to_num(lhs, nan=1.0),
                  oracle=_mp_zeta_abs(S, ctx.precision.digits))


@register("gamma-box", "|Gamma((1-s)/2)| bounded by 1.186 where the functional equation is applied",
          "-0.001 <= sigma <= 1/2, |t| <= 0.501",
          "|Gamma(s/2)| <= e^0.17 <= 1.186, evaluated at the argument (1-s)/2 with 1/4 <= Re <= 0.5005, |Im| <= 0.2505")
def _gamma_box(ctx):
    import mpmath

    S, grid = _box(-0.001, 0.5, -0.501, 0.501, ctx.box())
    Zarg = (1 - S) / 2
    lhs = np.abs(gamma(Zarg))

    def oracle(i):
        with mpmath.workdps(ctx.precision.digits):
            v = float(abs(mpmath.gamma(mpmath.mpc(complex(Zarg[i])))))
        return v, v * 1e-25

    return _grade("gamma-box", ctx, grid, _spoints(S), lhs, 1.186, 1e-13 * lhs, oracle=oracle,
                  notes=("Gamma is at least sqrt(pi) on this argument range, so the bound is unattainable",))


# ---------------------------------------------------------------- zeta'/zeta


def _logderiv_claim(cid, ctx, S, rhs, grid, notes=()):
    vals = _safe(zeta_logderiv, S)
    lhs = np.abs(vals)
    return _grade(cid, ctx, grid, _spoints(S), lhs, rhs, 1e-10 * np.nan_to_num(lhs, nan=1.0),
                  oracle=_mp_logderiv_abs(S, ctx.precision.digits), notes=notes)


@register("prop5b", "|zeta'/zeta(-1 + it)| against a logarithmic bound", "12 < t <= 1000",
          "|zeta'/zeta(-1 +- it)| <= 2.999 log t + 10.241 for 12 < t <= T")
def _prop5b(ctx):
    n = ctx.range_points()
    t = np.linspace(12, 1000, n + 1)[1:]
    S = -1 + 1j * t
    return _logderiv_claim("prop5b", ctx, S, 2.999 * np.log(t) + 10.241, f"{n} points t in (12, 1000]",
                           notes=("conjugate symmetry covers -t",))


@register("prop5c", "|zeta'/zeta(-1 + it)| against a constant", "0 <= t <= 12",
          "|zeta'/zeta(-1 +- it)| <= 19.172 for 0 <= t <= 12")
def _prop5c(ctx):
    n = ctx.range_points()
    t = np.linspace(0, 12, n)
    return _logderiv_claim("prop5c", ctx, -1 + 1j * t, 19.172, f"{n} points t in [0, 12]",
                           notes=("conjugate symmetry covers -t",))


def _prop5a(cid, ctx, power):
    zl = ctx.zero_list()
    n = ctx.box()
    T_all = np.geomspace(20, zl.last - 2, n)
    assoc = [associate(zl, t - 1.5, 1.155) for t in T_all]
    keep = np.array([not a.degenerate for a in assoc])
    T = T_all[keep]
    Tc = np.array([a.T_check for a, k in zip(assoc, keep) if k])
    sig = np.linspace(-1, 2, n)
    S = (sig[None, :] + 1j * Tc[:, None]).ravel()
    rhs = np.repeat(6.159 * np.log(T) ** power, n)
    vals = _safe(zeta_logderiv, S)
    lhs = np.abs(vals)
    points = [{"T": float(T[i // n]), "T_check": float(Tc[i // n]), "sigma": float(sig[i % n])} for i in range(S.size)]
    dropped = int((~keep).sum())
    return _grade(cid, ctx, f"{T.size} heights T in [20, {T_all[-1]:.6g}] x {n} sigma in [-1, 2]", points, lhs, rhs,
                  1e-10 * np.nan_to_num(lhs, nan=1.0), oracle=_mp_logderiv_abs(S, ctx.precision.digits),
                  notes=("T_check is the associate of T - 3/2 with half-width 1.155 in the loaded zero data",
                         f"{dropped} of {T_all.size} heights dropped: their window held fewer than two zeros, so no associate exists",
                         "region substituted: T in [20, last ordinate] instead of T >= T0"),
                  extras={"dropped_heights": [float(t) for t in T_all[~keep]]})


@register("prop5a-sq", "|zeta'/zeta| on horizontal lines at associate heights, squared-log bound",
          "-1 <= sigma <= 2, T in [20, last ordinate]",
          "|zeta'/zeta(sigma +- i T_check)| <= 6.159 log^2 T", needs_zeros=True)
def _prop5a_sq(ctx):
    return _prop5a("prop5a-sq", ctx, 2)


@register("prop5a-lin", "|zeta'/zeta| on horizontal lines at associate heights, single-log bound",
          "-1 <= sigma <= 2, T in [20, last ordinate]",
          "|zeta'/zeta(sigma +- i T_check)| <= 6.159 log T (form reached at the end of the proof)", needs_zeros=True)
def _prop5a_lin(ctx):
    return _prop5a("prop5a-lin", ctx, 1)


@register("zeta-upper", "|zeta| right of the critical line against 4.2143 (T+1)^{1/2}",
          "1/2 < sigma <= 3, 14 <= |t| <= 1000",
          "|zeta(sigma + it)| <= 4.2143 (T+1)^{1/2} for sigma > 1/2, 14 <= |t| < T + 1")
def _zeta_upper(ctx):
    n = ctx.box()
    S, grid = _box(0.5, 3, 14, 1000, n, open_left=True)
    lhs = _abs_zeta(S)
    rhs = 4.2143 * np.sqrt(np.abs(S.imag))
    return _grade("zeta-upper", ctx, grid, _spoints(S), lhs, rhs, ZETA_REL_ERR * lhs,
                  oracle=_mp_zeta_abs(S, ctx.precision.digits),
                  notes=("the least favourable admissible T has T + 1 = |t|, so the bound is taken at T + 1 = |t|",
                         "conjugate symmetry covers negative t"))


# ---------------------------------------------------------------- sieve claims


def _psi_claim(cid, ctx, lo, hi_want, lhs_fn, rhs_fn, notes=(), oracle_lhs=None):
    hi, clip = ctx.x_top(hi_want)
    n = ctx.range_points()
    x = _xgrid(lo, hi, n)
    t = ctx.table(hi)
    lhs = lhs_fn(x, t)
    rhs = rhs_fn(x)
    err = 1e-13 * (x + np.abs(lhs))
    oracle = None
    if oracle_lhs is not None:
        def oracle(i):
            return oracle_lhs(float(x[i])), 1e-13 * float(x[i])
    return _grade(cid, ctx, f"{n} log-spaced x in [{lo:g}, {hi:g}]", _xpoints(x), lhs, rhs, err,
                  oracle=oracle, notes=tuple(notes) + clip)


@register("varpi-band", "|varpi| bounded piecewise: constants below 28.99, 9 x^{1/2} log^2 x above",
          "0.99 <= x <= 10^7",
          "|varpi(x)| <= 1.307 on [0.99, e), <= 3.584 on [e, 28.99), <= 9 x^{1/2} log^2 x on [28.99, Y0)")
def _varpi_band(ctx):
    n = ctx.range_points()
    hi, clip = ctx.x_top(X_RANGE_TOP)
    b1 = np.concatenate([np.linspace(0.99, math.e, n, endpoint=False), [1.0, 1.5, 2.0, 2.5]])
    b2 = np.concatenate([np.linspace(math.e, 28.99, n, endpoint=False), np.arange(3, 29, 0.5)])
    b3 = _xgrid(CONSTANTS.x2, hi, n)
    x = np.concatenate([np.sort(b1), np.sort(b2), b3])
    rhs = np.concatenate([np.full(b1.size, 1.307), np.full(b2.size, 3.584), 9 * np.sqrt(b3) * np.log(b3) ** 2])
    t = ctx.table(hi)
    lhs = np.abs(arith.varpi(x, t))

    def oracle(i):
        xi = float(x[i])
        return abs(_psi_oracle(xi) - _count_ones(xi)), 1e-13 * xi

    return _grade("varpi-band", ctx, f"{n} points per branch (plus integers and half-integers below 29)", _xpoints(x),
                  lhs, rhs, 1e-13 * (x + lhs), oracle=oracle,
                  notes=("region substituted: third branch audited on [28.99, 10^7] instead of [28.99, Y0)",) + clip)


@register("lemma1-desk", "|psi(x) - x| against 7.65 x^{1/2} log^2 x", "28.99 <= x <= 10^7",
          "|psi(x) - x| <= 7.65 x^{1/2} log^2 x for 28.99 <= x <= x3")
def _lemma1(ctx):
    return _psi_claim("lemma1-desk", ctx, CONSTANTS.x2, X_RANGE_TOP,
                      lambda x, t: np.abs(arith.psi(x, t) - x), lambda x: 7.65 * np.sqrt(x) * np.log(x) ** 2,
                      notes=("region substituted: [28.99, 10^7] instead of [28.99, 6.647e13]",),
                      oracle_lhs=lambda x: abs(_psi_oracle(x) - x))


def _lemma1_branch2_rhs(x):
    L = np.log(x)
    return 4.87 * x * np.exp(-L ** 0.6 / (97 * np.log(L) ** (1 / 3))) * L ** 2


@register("lemma1-branch2-desk", "|psi(x) - x| against the zero-free-region shaped bound", "28.99 <= x <= 10^7",
          "|psi(x) - x| <= 4.87 x exp(-log^{3/5} x / (97 (log log x)^{1/3})) log^2 x for x >= x3")
def _lemma1_b2(ctx):
    return _psi_claim("lemma1-branch2-desk", ctx, CONSTANTS.x2, X_RANGE_TOP,
                      lambda x, t: np.abs(arith.psi(x, t) - x), _lemma1_branch2_rhs,
                      notes=("region substituted: stated for x >= 6.647e13, audited on [28.99, 10^7]",),
                      oracle_lhs=lambda x: abs(_psi_oracle(x) - x))


@register("schoenfeld-desk", "|psi(x) - x| against 0.22 x e^{-0.32 log^{1/2} x} log^{1/4} x", "17 <= x <= 10^7",
          "|psi(x) - x| <= 0.22 x e^{-0.32 log^{1/2} x} log^{1/4} x for x >= 17")
def _schoenfeld(ctx):
    return _psi_claim("schoenfeld-desk", ctx, 17.0, X_RANGE_TOP,
                      lambda x, t: np.abs(arith.psi(x, t) - x),
                      lambda x: 0.22 * x * np.exp(-0.32 * np.sqrt(np.log(x))) * np.log(x) ** 0.25,
                      notes=("desk range: [17, 10^7] of the stated x >= 17",),
                      oracle_lhs=lambda x: abs(_psi_oracle(x) - x))


@register("corollary1-desk", "|psi(x) - x + 1| against D x^{1 - H_0(x)} log^2 x with D = 11", "28.99 <= x <= 10^7",
          "varpi(x) <= |psi(x) - x + 1| <= D x^{1-H_0(x)} log^2 x, D = 11, for x >= x3")
def _corollary1(ctx):
    return _psi_claim("corollary1-desk", ctx, CONSTANTS.x2, X_RANGE_TOP,
                      lambda x, t: np.abs(arith.psi(x, t) - x + 1),
                      lambda x: CONSTANTS.D * x ** (1 - threshold_H(0, x)) * np.log(x) ** 2,
                      notes=("region substituted: stated for x >= 6.647e13, audited on [28.99, 10^7]",),
                      oracle_lhs=lambda x: abs(_psi_oracle(x) - x + 1))


@register("thm3", "|pi(x) - Li(x)| against c x^{1/2} log x", "2.01 <= x <= 10^6",
          "|pi(x) - Li(x)| <= x^{1/2} log x / (8 pi) for x >= 1451; coefficient 1 for 2.01 <= x < 1451")
def _thm3(ctx):
    import mpmath

    n = ctx.range_points()
    x = _xgrid(2.01, 1e6, n)
    t = ctx.table(1e6)
    pi_x = arith.prime_pi(x, t)
    li = np.array([log_integral(v) for v in x])
    lhs = np.abs(pi_x - li)
    coef = np.where(x < 1451, 1.0, 1 / (8 * math.pi))
    rhs = coef * np.sqrt(x) * np.log(x)

    def oracle(i):
        xi = float(x[i])
        k = math.floor(xi)
        mark = np.ones(k + 1, dtype=bool)
        mark[:2] = False
        for p in range(2, int(k**0.5) + 1):
            if mark[p]:
                mark[p * p::p] = False
        cnt = float(np.count_nonzero(mark)) - (0.5 if xi == k and mark[k] else 0.0)
        with mpmath.workdps(30):
            li_x = float(mpmath.li(xi) - mpmath.li(2))
        return abs(cnt - li_x), 1e-20

    return _grade("thm3", ctx, f"{n} log-spaced x in [2.01, 10^6]", _xpoints(x), lhs, rhs, 1e-9 + 1e-13 * x, oracle=oracle)


PRINTED_VARPI_TABLE = (
    0, -1, -1.307, -1.209, -1.516, -0.906, -1.906, -0.96, -1.267, -1.168, -2.168, -0.771, -1.771, -0.206, -1.206,
    -2.206, -2.512, -1.372, -2.372, -0.428, -1.428, -2.428, -3.428, -1.292, -2.292, -1.683, 2.683, -2.584, -3.584,
)
TABLE_TOL = 5e-4


def varpi_table_rows(table=None) -> list:
    """(label, midpoint, printed, sieve) for '< 1' and each interval (k, k+1), k = 1..28."""
    x = np.array([0.5] + [k + 0.5 for k in range(1, 29)])
    vals = arith.varpi(x, table)
    labels = ["<1"] + [f"({k},{k + 1})" for k in range(1, 29)]
    return [(lab, float(xm), float(p), float(v)) for lab, xm, p, v in zip(labels, x, PRINTED_VARPI_TABLE, vals)]


@register("table-varpi", "printed values of varpi on (0, 29) against the sieve", "'< 1' and (k, k+1), k = 1..28",
          "listed varpi(x) for 0 < x < 28.99, three-significant-digit lower bounds, all negative")
def _table_varpi(ctx):
    rows = varpi_table_rows(ctx.table(100))
    lhs = np.array([abs(s - p) for _, _, p, s in rows])
    points = [{"x": xm} for _, xm, _, _ in rows]
    lower_bound_ok = [lab for lab, _, p, s in rows if p <= s + 1e-12 and s - p < 1e-3]
    positive_true = [lab for lab, _, _, s in rows if s > 0]
    positive_printed = [lab for lab, _, p, _ in rows if p > 0]
    return _grade("table-varpi", ctx, "29 table entries at interval midpoints", points, lhs, TABLE_TOL, 0.0,
                  notes=(f"match tolerance {TABLE_TOL:g}",
                         "entries printed as positive contradict the 'all negative' statement",),
                  extras={
                      "rows": [{"interval": lab, "printed": p, "sieve": s} for lab, _, p, s in rows],
                      "valid_three_digit_lower_bounds": lower_bound_ok,
                      "printed_positive": positive_printed,
                      "sieve_positive": positive_true,
                  })


# ---------------------------------------------------------------- zero data


def _backlund(cid, ctx, variant):
    zl = ctx.zero_list()
    n = ctx.range_points()
    T = np.unique(np.concatenate([np.geomspace(2, zl.last, n), [20, 50, 100, 500, 1000, 5000, zl.last]]))
    res = [backlund_band(zl, float(t), variant) for t in T]
    lhs = np.array([r.deviation for r in res])
    rhs = np.array([r.Q for r in res])
    return _grade(cid, ctx, f"{T.size} heights T in [2, {zl.last:.6g}]", [{"T": float(t)} for t in T], lhs, rhs,
                  1e-12 * (1 + lhs), notes=(f"zero data: {zl.count} ordinates from {zl.source}",))


@register("backlund", "zero count against the smooth main term, standard orientation", "2 <= T <= last ordinate",
          "|N(T) - M(T) - 7/8| <= Q(T) (classical orientation of the printed band)", needs_zeros=True)
def _backlund_std(ctx):
    return _backlund("backlund", ctx, "standard")


@register("backlund-printed", "zero count against the smooth main term, as printed", "2 <= T <= last ordinate",
          "|N(T) - M(T) + 7/8| <= Q(T), Q(T) = 0.137 log T + 0.443 log log T + 1.588", needs_zeros=True)
def _backlund_printed(ctx):
    return _backlund("backlund-printed", ctx, "printed")


@register("n-upper", "N(T) below T log T / (2 pi)", "6 <= T <= last ordinate", "N(T) < T log T / (2 pi) for T >= 6",
          needs_zeros=True)
def _n_upper(ctx):
    zl = ctx.zero_list()
    n = ctx.resolution or 100
    T = np.geomspace(6, zl.last, n)
    lhs = count_zeros(zl, T).astype(float)
    rhs = T * np.log(T) / (2 * math.pi)
    return _grade("n-upper", ctx, f"{n} log-spaced T in [6, {zl.last:.6g}]", [{"T": float(t)} for t in T], lhs, rhs,
                  1e-12 * rhs, strict=True)


@register("assoc-separation", "window zeros keep distance u/(2n) from the associate", "20 <= t <= last ordinate - 2, u = 1.155",
          "|z_k - T_check| >= u/(2n) for every window zero, T_check the midpoint of the widest internal gap",
          needs_zeros=True)
def _assoc_separation(ctx):
    zl = ctx.zero_list()
    n = ctx.resolution or 2000
    u = 1.155
    pts, lhs, rhs, skipped = [], [], [], 0
    for t in np.linspace(20, zl.last - 2, n):
        a = associate(zl, float(t), u)
        if a.degenerate:
            skipped += 1
            continue
        pts.append({"t": float(t), "n": a.n, "T_check": a.T_check})
        lhs.append(u / (2 * a.n))
        rhs.append(a.min_separation)
    return _grade("assoc-separation", ctx, f"{n} equally spaced t in [20, {zl.last - 2:.6g}]", pts, lhs, rhs, 0.0,
                  notes=(f"{skipped} windows with fewer than two zeros have no internal gap and were skipped",
                         "only gaps between window zeros are candidates; a cluster of zeros in the middle of the "
                         "window leaves every internal gap narrower than u/n"),
                  extras={"skipped_degenerate": skipped})


@register("density-data","count of zeros with real part at least lambda > 1/2", "1/2 < lambda < 1, 14 <= T <= last ordinate",
          "N(lambda, T) <= 8.734 log T for 1/2 < lambda < 1, T >= T0", needs_zeros=True)
def _density(ctx):
    zl = ctx.zero_list()
    n = ctx.resolution or 100
    T = np.geomspace(14, zl.last, n)
    lams = (0.51, 0.6, 0.75, 0.9, 0.99)
    pts, lhs, rhs = [], [], []
    for lam in lams:
        for t in T:
            pts.append({"lambda": lam, "T": float(t)})
            lhs.append(count_zeros_density(zl, lam, float(t)).count)
            rhs.append(8.734 * math.log(t))
    return _grade("density-data", ctx, f"{len(lams)} lambdas x {n} heights", pts, lhs, rhs, 0.0,
                  notes=("the loaded data holds critical-line zeros only, so N(lambda, T) = 0 by construction: "
                         "this pass carries no evidential weight",
                         "region substituted: T up to the last ordinate instead of T >= T0"))


# ---------------------------------------------------------------- threshold functions


@register("H-continuity", "the two pieces of H_j meet at x = 28.99", "j = 0..6 at x = 28.99",
          "H_j(x) = 1/2 below 28.99 and 2/log^{(7-j)/12} x from 28.99 on; H_j is continuous at its joint")
def _h_continuity(ctx):
    js = list(range(7))
    right = np.array([2 / math.log(CONSTANTS.x2) ** ((7 - j) / 12) for j in js])
    lhs = np.abs(right - 0.5)
    return _grade("H-continuity", ctx, "7 values of j", [{"j": j, "x": CONSTANTS.x2} for j in js], lhs, 0.0, 1e-15,
                  notes=("continuity means the right-piece value equals the left value 1/2",),
                  extras={"right_piece": {str(j): float(v) for j, v in zip(js, right)}})


@register("H0-consistency", "H_0(x) log x against the stated 2 log^{1/2} x", "28.99 <= x, log x up to 10^4",
          "H_0(x) log x = 2 log^{1/2} x, with H_0 from the two-piece definition")
def _h0(ctx):
    n = ctx.range_points()
    L = np.geomspace(math.log(CONSTANTS.x2), 1e4, n)
    defined = 2 * L ** (5 / 12)
    stated = 2 * np.sqrt(L)
    lhs = np.abs(defined - stated)
    return _grade("H0-consistency", ctx, f"{n} log-spaced log x in [log 28.99, 10^4]", [{"log_x": float(v)} for v in L],
                  lhs, 0.0, 1e-14 * stated,
                  notes=("the definition gives H_0(x) log x = 2 log^{5/12} x",))


@register("zf-vs-h1", "classical zero-free width against 1/(2 t^{w/2}) with w = 3", "t >= e^e, log t up to 10^6",
          "1/(49.13 log^{2/3} t (log log t)^{1/3}) >= 1/(2 t^{w/2}) for t >= e^e and any w >= 3")
def _zf_vs_h1(ctx):
    n = ctx.range_points()
    Lt = np.geomspace(math.e, 1e6, n)
    lhs = -math.log(2) - 1.5 * Lt  # log of 1/(2 t^{3/2}); w = 3 is the least favourable admissible w
    rhs = -math.log(49.13) - (2 / 3) * np.log(Lt) - (1 / 3) * np.log(np.log(Lt))
    return _grade("zf-vs-h1", ctx, f"{n} log-spaced log t in [e, 10^6]", [{"log_t": float(v)} for v in Lt], lhs, rhs,
                  1e-14 * np.abs(lhs), notes=("compared in logarithms",))


@register("c1-monotone", "log^{5/12} x (0.32 log^{1/12} x - 2) + (7/4) log log x increasing in x", "28.99 <= x <= 10^8",
          "log^{5/12} x (0.32 log^{1/12} x - 2) + (7/4) log log x is a monotonically increasing function of x")
def _c1_monotone(ctx):
    n = ctx.range_points()
    x = np.geomspace(CONSTANTS.x2, 1e8, n)
    L = np.log(x)
    f = L ** (5 / 12) * (0.32 * L ** (1 / 12) - 2) + 1.75 * np.log(L)
    pts = [{"x": float(a), "x_next": float(b)} for a, b in zip(x[:-1], x[1:])]
    # derivative in log x: 0.16 L^{-1/2} - (5/6) L^{-7/12} + 1.75/L
    d = lambda L: 0.16 * L ** -0.5 - (5 / 6) * L ** (-7 / 12) + 1.75 / L  # noqa: E731
    Ls = np.geomspace(1.0, 1e6, 200001)
    sign_changes = Ls[1:][np.diff(np.sign(d(Ls))) != 0]
    return _grade("c1-monotone", ctx, f"{n} log-spaced x in [28.99, 10^8], consecutive pairs", pts, f[:-1], f[1:],
                  1e-14 * (1 + np.abs(f[:-1])), strict=True,
                  extras={"derivative_sign_changes_at_x": [float(np.exp(v)) for v in sign_changes]})


# ---------------------------------------------------------------- contour constants


DESK_SAMPLES = ((1000.51, 1000.49, (20.0, 50.0, 100.0)), (10000.51, 10000.49, (20.0, 50.0, 100.0)))
# y just above Y0 with x/y = 1 + 5e-8, and T in the admissible window [15.93, log^{4/5} y]
_Y_BIG = CONSTANTS.Y0 + 0.49
SCALE_SAMPLE = (_Y_BIG * (1 + 5e-8), _Y_BIG, (15.94,))
POLAR_M = 0.75
POLAR_A = 1e-3


def _samples(ctx, with_scale=True):
    """(x, y, T, T_check) tuples; T_check is the associate of T - 3/2 with half-width 1.155."""
    zl = ctx.zero_list()
    out = []
    for x, y, heights in DESK_SAMPLES + ((SCALE_SAMPLE,) if with_scale else ()):
        for T in heights:
            out.append((x, y, T, associate(zl, T - 1.5, 1.155).T_check))
    return out


@register("const-6-3", "|W~| = |Im(W15 - W64)| against 0.25131", "(y, T) sampled at desk scale",
          "|Im W~| <= 0.25131 with W~ = Im(W15 - W64)", needs_zeros=True)
def _const_6_3(ctx):
    pts, lhs, err = [], [], []
    for x, y, T, Tc in _samples(ctx):
        led = perron.w_ledger(x, y, POLAR_M, Tc, tol=1e-10, with_zeta=False, with_sums=False)
        pts.append({"x": x, "y": y, "T": T, "T_check": Tc, "m": POLAR_M})
        lhs.append(abs(led.W_tilde))
        err.append(sum(led.errors.values()))
    return _grade("const-6-3", ctx, f"{len(pts)} (y, T) samples", pts, lhs, 0.25131, err,
                  notes=("W~ is already an imaginary part; the audited quantity is |W~|",
                         "W~ stays near 2 pi because W15 - W64 keeps the residue of ds/s at the origin"))


@register("const-6-9", "two square-root constants at Y0 = 6.6469e13", "two inequalities",
          "(1 - 1/(2 Y0^{1/2}))^{1/2} >= 0.999999999999992 and (1 - 1/(3 Y0^{1/2}))^{1/2} <= 0.999999999999995")
def _const_6_9(ctx):
    import mpmath

    with mpmath.workdps(50):
        Y0 = mpmath.mpf("6.6469e13")
        a = mpmath.sqrt(1 - 1 / (2 * mpmath.sqrt(Y0)))
        b = mpmath.sqrt(1 - 1 / (3 * mpmath.sqrt(Y0)))
        ca = mpmath.mpf("0.999999999999992")
        cb = mpmath.mpf("0.999999999999995")
        m1, m2 = float(a - ca), float(cb - b)
    # lhs <= rhs with lhs chosen so that rhs - lhs is the exact margin
    return _grade("const-6-9", ctx, "2 inequalities", [{"which": 1}, {"which": 2}], [-m1, -m2], [0.0, 0.0], 0.0,
                  notes=("margins computed with 50-digit arithmetic",),
                  extras={"first_value": float(a), "second_value": float(b)})


SAMPLE_NOTES = (
    "samples at y near 10^3 and 10^4 are below the stated range y >= Y0; bounds that use y >= Y0 can fail there",
    "no sample at y >= Y0: the small arc then spans about 2/y = 3e-14 rad, below double-precision angle resolution near pi",
)


def _polar(x, y, T_check, a, names, tol=1e-12):
    spec = perron.polar_composite(POLAR_M, T_check, y, a, a)
    return perron.polar_w15_pieces(x, y, spec, tol, only=names)


def _polar_claim(cid, ctx, names, pieces_rhs, notes=()):
    pts, lhs, rhs, err = [], [], [], []
    for x, y, T, Tc in _samples(ctx, with_scale=False):
        pp = _polar(x, y, Tc, POLAR_A, names)
        for name, value_fn, bound in pieces_rhs(x, y, T):
            pts.append({"x": x, "y": y, "T": T, "T_check": Tc, "piece": name})
            lhs.append(abs(value_fn(pp)))
            rhs.append(bound)
            err.append(sum(pp.errors.values()))
    return _grade(cid, ctx, f"{len(pts)} (x, y, T, piece) samples, a = {POLAR_A:g}, m = {POLAR_M}", pts, lhs, rhs, err,
                  notes=tuple(notes) + SAMPLE_NOTES)


@register("w15-AB", "two big-arc pieces of W15", "sampled (x, y, T)", "|W15,A + W15,B| <= 2.002/T", needs_zeros=True)
def _w15_ab(ctx):
    return _polar_claim("w15-AB", ctx, ("A", "B"), lambda x, y, T: [("A+B", lambda p: p.pieces["A"] + p.pieces["B"], 2.002 / T)])


@register("w15-C", "small-arc piece of W15", "sampled (x, y, T)", "|W15,C| <= 2/y", needs_zeros=True)
def _w15_c(ctx):
    return _polar_claim("w15-C", ctx, ("C",), lambda x, y, T: [("C", lambda p: p.pieces["C"], 2 / y)])


@register("w15-Cprime", "far part of the right line piece of W15", "sampled (x, y, T)", "|W'15,C| <= 2e-6/T",
          needs_zeros=True)
def _w15_cp(ctx):
    return _polar_claim("w15-Cprime", ctx, ("W'_C",), lambda x, y, T: [("W'_C", lambda p: p.sub_pieces["W'_C"], 2e-6 / T)])


@register("w15-M1", "left line pieces next to the big circle", "sampled (x, y, T)",
          "|W15,M| <= 1.0001/T and |W15,1| <= 1.0001/T (the first printed with the label E)", needs_zeros=True)
def _w15_m1(ctx):
    return _polar_claim("w15-M1", ctx, ("M", "1"), lambda x, y, T: [
        ("M", lambda p: p.sub_pieces["M"], 1.0001 / T),
        ("1", lambda p: p.sub_pieces["1"], 1.0001 / T),
    ])


LIMIT_STEPS = (1e-2, 1e-3, 1e-4)


@register("w15-limit", "pieces of W15 that vanish as the line offsets shrink", "a in {1e-2, 1e-3, 1e-4}",
          "W15,D, W15,E, W15,1, W15,2 tend to 0 as the offsets a -> 0 (checked as strict decay)", needs_zeros=True)
def _w15_limit(ctx):
    pts, lhs, rhs = [], [], []
    extras = {}
    for x, y, T, Tc in _samples(ctx, with_scale=False)[:3]:
        vals = []
        for a in LIMIT_STEPS:
            pp = _polar(x, y, Tc, a, ("D", "E", "1", "2", "M", "N"))
            vals.append({**{k: abs(pp.pieces[k]) for k in ("D", "E")}, **{k: abs(pp.sub_pieces[k]) for k in ("1", "2", "M", "N")}})
        extras[f"T={T:g}"] = [{k: float(v) for k, v in d.items()} for d in vals]
        for k in ("D", "E", "1", "2"):
            for i in range(len(LIMIT_STEPS) - 1):
                pts.append({"T": T, "T_check": Tc, "piece": k, "a": LIMIT_STEPS[i + 1]})
                lhs.append(vals[i + 1][k])
                rhs.append(vals[i][k])
    return _grade("w15-limit", ctx, f"3 heights x {len(LIMIT_STEPS)} offsets at (x, y) = {DESK_SAMPLES[0][:2]}",
                  pts, lhs, rhs, 1e-12, strict=True, extras=extras,
                  notes=("M and N do not vanish in this limit; their magnitudes are listed in extras",))


@register("w-tilde-bound", "W~ against the assembled bound", "sampled (x, y, T)",
          "Im W~ <= 3.243 (x-y) T/y + 6.05 T/y + 4.003/T + 2.001/y", needs_zeros=True)
def _w_tilde(ctx):
    pts, lhs, rhs, err = [], [], [], []
    for x, y, T, Tc in _samples(ctx):
        led = perron.w_ledger(x, y, POLAR_M, Tc, tol=1e-10, with_zeta=False, with_sums=False)
        pts.append({"x": x, "y": y, "T": T, "T_check": Tc})
        lhs.append(led.W_tilde)
        rhs.append(3.243 * (x - y) * T / y + 6.05 * T / y + 4.003 / T + 2.001 / y)
        err.append(sum(led.errors.values()))
    return _grade("w-tilde-bound", ctx, f"{len(pts)} (x, y, T) samples", pts, lhs, rhs, err)


# ---------------------------------------------------------------- Euler-Maclaurin form, xi, Mobius


def em_integral(s: complex, n_intervals: int = 200_000) -> tuple:
    """int_1^inf (u - [u] - 1/2) u^{-s-1} du by 10-point Gauss-Legendre per unit interval.

    Returns (value, tail bound) where the tail beyond N is at most N^{-sigma}/(2 sigma).
    """
    s = complex(s)
    xg, wg = np.polynomial.legendre.leggauss(10)
    u0 = 0.5 * (xg + 1)
    w = 0.5 * wg
    total = 0j
    chunk = 20_000
    parts = []
    for start in range(1, n_intervals + 1, chunk):
        n = np.arange(start, min(start + chunk, n_intervals + 1), dtype=float)
        u = n[:, None] + u0[None, :]
        vals = (u0[None, :] - 0.5) * np.exp(-(s + 1) * np.log(u))
        parts.append(vals @ w)
    total = np.concatenate(parts)
    val = complex(math.fsum(total.real), math.fsum(total.imag))
    sig = s.real
    tail = (n_intervals + 1) ** (-sig) / (2 * sig)
    return val, tail


@register("em-2-29", "boundary term of the Euler-Maclaurin representation of zeta", "sigma in {1.5, 2, 3}, t in {0, 5, 10}",
          "zeta(s) = 1/s + 1/2 - s int_1^inf (u - [u] - 1/2) u^{-s-1} du for sigma > 0")
def _em_229(ctx):
    pts, lhs, corr = [], [], []
    for sig in (1.5, 2.0, 3.0):
        for t in (0.0, 5.0, 10.0):
            s = complex(sig, t)
            I, tail = em_integral(s)
            ref = zeta_dirichlet(s)
            printed = 1 / s + 0.5 - s * I
            corrected = 1 / (s - 1) + 0.5 - s * I
            pts.append({"sigma": sig, "t": t})
            lhs.append(abs(printed - ref))
            corr.append(abs(corrected - ref))
    tol = 1e-6
    return _grade("em-2-29", ctx, "9 points", pts, lhs, tol, 1e-9,
                  notes=(f"printed form compared with the Dirichlet series at tolerance {tol:g}",
                         f"corrected form with 1/(s-1): largest residual {max(corr):.3g}"),
                  extras={"corrected_residuals": corr})


@register("xi-positivity", "Re xi'/xi positive right of the critical line", "0.6 <= sigma <= 3, |t| <= 30",
          "Re xi'(s)/xi(s) > 0")
def _xi_pos(ctx):
    import mpmath

    n = ctx.box()
    S, grid = _box(0.6, 3, -30, 30, n)
    vals = _safe(xi_logderiv, S)
    lhs = -vals.real

    def oracle(i):
        with mpmath.workdps(ctx.precision.digits):
            s = mpmath.mpc(complex(S[i]))
            v = -mpmath.log(mpmath.pi) / 2 + 1 / s + mpmath.digamma(s / 2) / 2 + 1 / (s - 1) + mpmath.zeta(s, 1, 1) / mpmath.zeta(s)
        return -float(v.real), 1e-25

    return _grade("xi-positivity", ctx, grid, _spoints(S), lhs, 0.0, 1e-10 * (1 + np.abs(vals)), strict=True, oracle=oracle)


@register("mobius-demo", "partial sums of mu(n) n^{-s} approaching 1/zeta(s)", "N = 10^2..10^6",
          "1/zeta(s) = sum mu(n)/n^s, convergent for sigma > 1/2")
def _mobius(ctx):
    t = ctx.table(10**6)
    n = np.arange(1, 10**6 + 1, dtype=float)
    mu = t.mobius[1:10**6 + 1].astype(float)
    pts, lhs = [], []
    trace = {}
    for s in (2.0, 1.5, 1.0 + 10j, 0.75 + 5j):
        terms = mu * np.exp(-complex(s) * np.log(n))
        cum = np.cumsum(terms)
        inv = 1 / complex(zeta_values(s))
        for N in (10**2, 10**3, 10**4, 10**5, 10**6):
            d = abs(cum[N - 1] - inv)
            pts.append({"sigma": complex(s).real, "t": complex(s).imag, "N": N})
            lhs.append(d)
        trace[f"{complex(s)}"] = [float(v) for v in lhs[-5:]]
    return _grade("mobius-demo", ctx, "4 values of s x 5 cutoffs", pts, lhs, np.inf, 0.0, info=True,
                  notes=("trace only: lhs is |partial sum - 1/zeta(s)|; no verdict is drawn",), extras=trace)


def run_all(ctx: AuditContext | None = None) -> list:
    ctx = ctx or AuditContext()
    return [run_claim(cid, ctx=ctx) for cid in REGISTRY]
