"""Divisor-sum inequalities checked integer by integer against the sieve."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .. import arith
from ..errors import CoverageError, DomainError
from ..numkernel import EULER_GAMMA
from .report import AuditReport, grade

EQUALITY_TOL = 1e-12


def _table(n_hi: int, table=None):
    if table is not None:
        if n_hi > table.limit:
            raise CoverageError(f"n = {n_hi} exceeds sieve limit {table.limit}")
        return table
    return arith.sieve_for(float(n_hi))


def _ints(n_lo: int, n_hi: int) -> np.ndarray:
    return np.arange(n_lo, n_hi + 1, dtype=np.int64)


def robin_check(n_lo: int, n_hi: int, table=None) -> AuditReport:
    """sigma(n) < e^gamma n log log n for every n in [n_lo, n_hi]."""
    n_lo, n_hi = int(n_lo), int(n_hi)
    if n_lo < 3:
        raise DomainError("log log n needs n >= 3")
    if n_hi < n_lo:
        raise DomainError("empty range")
    t = _table(n_hi, table)
    n = _ints(n_lo, n_hi)
    sig = t.sigma[n].astype(float)
    bound = math.exp(EULER_GAMMA) * n * np.log(np.log(n.astype(float)))
    err = 4e-16 * bound
    points = [{"n": int(k)} for k in n]
    return grade(
        "robin", "sigma(n) < e^gamma n log log n, asserted for n >= 5040", f"n in [{n_lo}, {n_hi}], every integer",
        points, sig, bound, err, strict=True,
        notes=("sigma(n) is exact (integer sieve); the bound carries a few ulps of rounding",),
    )


@njit(cache=True)
def _harmonic(n_hi):
    """H_1..H_n_hi by Neumaier-compensated accumulation."""
    out = np.empty(n_hi + 1)
    out[0] = 0.0
    s = 0.0
    c = 0.0
    for k in range(1, n_hi + 1):
        v = 1.0 / k
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[k] = s + c
    return out


def harmonic_numbers(n_hi: int) -> np.ndarray:
    return _harmonic(int(n_hi))


def lagarias_check(n_lo: int, n_hi: int, table=None) -> AuditReport:
    """sigma(n) <= H_n + e^{H_n} log H_n, with equalities detected at relative 1e-12."""
    n_lo, n_hi = int(n_lo), int(n_hi)
    if n_lo < 1 or n_hi < n_lo:
        raise DomainError("need 1 <= n_lo <= n_hi")
    t = _table(max(n_hi, 2), table)
    n = _ints(n_lo, n_hi)
    H = harmonic_numbers(n_hi)[n]
    rhs = H + np.exp(H) * np.log(H)
    sig = t.sigma[n].astype(float)
    eq = np.abs(rhs - sig) <= EQUALITY_TOL * rhs
    err = np.where(eq, 0.0, 1e-15 * rhs)
    # Equalities are exact ties, not violations: grade them with a zero margin.
    lhs = np.where(eq, rhs, sig)
    points = [{"n": int(k)} for k in n]
    return grade(
        "lagarias", "sigma(n) <= H_n + e^{H_n} log H_n, equality only for n = 1", f"n in [{n_lo}, {n_hi}], every integer",
        points, lhs, rhs, err,
        notes=(f"equality tolerance {EQUALITY_TOL:g} relative", "H_n accumulated with Neumaier compensation"),
        extras={"equalities": [int(k) for k in n[eq]]},
    )
