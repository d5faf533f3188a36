"""Sieve-backed arithmetic functions and their half-maximum sum functions.

Cumulative sums of Lambda are held in two-word fixed point: a high word in
units of 2^-35 and a low word in units of 2^-70, which together represent
every stored binary64 value of Lambda(n) exactly. Prefix sums are then exact
integer arithmetic, so psi(x) - floor(x) and the direct sum of Lambda(n) - 1
are the same integers before conversion, and the half-maximum average at an
integer is an exact rational of sieve sums.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CapacityError, CoverageError, DomainError

FIXED_BITS = 35
FIXED_SCALE = 1 << FIXED_BITS
MAX_LIMIT = 10**8
BYTES_PER_ENTRY = 64  # stored arrays plus construction temporaries

_settings = {"default_limit": 10**7}


def set_default_limit(limit: int) -> None:
    _settings["default_limit"] = int(limit)


def default_limit() -> int:
    return _settings["default_limit"]


@dataclass(frozen=True)
class SieveTable:
    limit: int
    spf: np.ndarray
    lam: np.ndarray
    mobius: np.ndarray
    sigma: np.ndarray
    is_prime: np.ndarray
    cum_lambda_fixed: np.ndarray
    cum_varpi_fixed: np.ndarray
    cum_lambda_low: np.ndarray
    cum_pi: np.ndarray
    cum_mobius: np.ndarray

    @property
    def cum_lambda(self) -> np.ndarray:
        return self.cum_lambda_fixed / FIXED_SCALE + self.cum_lambda_low / FIXED_SCALE**2

    @property
    def cum_varpi(self) -> np.ndarray:
        return self.cum_varpi_fixed / FIXED_SCALE + self.cum_lambda_low / FIXED_SCALE**2


@dataclass(frozen=True)
class SumFunctionValue:
    at: float
    value: float
    is_lattice: bool


@njit(cache=True)
def _linear_sieve(N):
    spf = np.zeros(N + 1, dtype=np.int32)
    primes = np.empty(max(16, int(1.3 * N / max(1.0, math.log(N))) + 16), dtype=np.int32)
    np_ = 0
    for i in range(2, N + 1):
        if spf[i] == 0:
            spf[i] = i
            primes[np_] = i
            np_ += 1
        for j in range(np_):
            p = primes[j]
            if p > spf[i] or p * i > N:
                break
            spf[p * i] = p
    return spf


@njit(cache=True)
def _fill(spf, N, scale):
    lam = np.zeros(N + 1, dtype=np.float64)
    mob = np.zeros(N + 1, dtype=np.int8)
    sig = np.zeros(N + 1, dtype=np.int64)
    isp = np.zeros(N + 1, dtype=np.bool_)
    pk = np.zeros(N + 1, dtype=np.int64)
    cl = np.zeros(N + 1, dtype=np.int64)
    cv = np.zeros(N + 1, dtype=np.int64)
    lo = np.zeros(N + 1, dtype=np.int64)
    cp = np.zeros(N + 1, dtype=np.int64)
    cm = np.zeros(N + 1, dtype=np.int64)
    if N >= 1:
        mob[1] = 1
        sig[1] = 1
        cv[1] = -scale
        cm[1] = 1
    for n in range(2, N + 1):
        p = spf[n]
        m = n // p
        if m % p == 0:
            pk[n] = pk[m] * p
        else:
            pk[n] = p
        rest = n // pk[n]
        sig[n] = sig[rest] * ((pk[n] * p - 1) // (p - 1))
        if pk[n] == p:
            mob[n] = -mob[rest]
        lfix = 0
        lres = 0
        if rest == 1:
            lam[n] = math.log(p)
            scaled = lam[n] * scale
            lfix = np.int64(round(scaled))
            lres = np.int64((scaled - lfix) * scale)
        if p == n:
            isp[n] = True
        cl[n] = cl[n - 1] + lfix
        cv[n] = cv[n - 1] + lfix - scale
        lo[n] = lo[n - 1] + lres
        cp[n] = cp[n - 1] + (1 if isp[n] else 0)
        cm[n] = cm[n - 1] + mob[n]
    return lam, mob, sig, isp, cl, cv, lo, cp, cm


def available_memory() -> int:
    try:
        return os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_AVPHYS_PAGES")
    except (ValueError, OSError, AttributeError):
        return 4 << 30


def build_sieve(N: int, memory_budget: int | None = None) -> SieveTable:
    """Linear sieve of smallest prime factors, then one multiplicative pass."""
    N = int(N)
    if N < 2 or N > MAX_LIMIT:
        raise DomainError(f"sieve limit must lie in [2, {MAX_LIMIT}], got {N}")
    budget = int(0.6 * available_memory()) if memory_budget is None else int(memory_budget)
    need = BYTES_PER_ENTRY * (N + 1)
    if need > budget:
        raise CapacityError(f"sieve to {N} needs about {need / 2**20:.0f} MiB, budget is {budget / 2**20:.0f} MiB")
    spf = _linear_sieve(N)
    arrays = _fill(spf, N, FIXED_SCALE)
    table = SieveTable(N, spf, *arrays)
    for name in ("spf", "lam", "mobius", "sigma", "is_prime", "cum_lambda_fixed", "cum_varpi_fixed", "cum_lambda_low", "cum_pi", "cum_mobius"):
        getattr(table, name).flags.writeable = False
    return table


_CACHE: dict[int, SieveTable] = {}
_CACHE_SIZE = 3


def get_sieve(limit: int) -> SieveTable:
    """Memoized build_sieve (keeps the three most recent limits)."""
    limit = int(limit)
    if limit not in _CACHE:
        table = build_sieve(limit)
        while len(_CACHE) >= _CACHE_SIZE:
            _CACHE.pop(next(iter(_CACHE)))
        _CACHE[limit] = table
    return _CACHE[limit]


def sieve_for(x, table: SieveTable | None = None) -> SieveTable:
    """Return ``table`` if given, else a cached sieve covering ``x`` within the default limit."""
    xmax = float(np.max(x))
    if table is not None:
        if xmax > table.limit:
            raise CoverageError(f"x = {xmax} exceeds sieve limit {table.limit}")
        return table
    cap = default_limit()
    if xmax > cap:
        raise CoverageError(f"x = {xmax} exceeds sieve limit {cap}")
    for lim in sorted(_CACHE):
        if lim >= xmax:
            return _CACHE[lim]
    want = 10 ** max(6, math.ceil(math.log10(max(xmax, 2.0))))
    return get_sieve(min(want, cap))


_FIELDS = {"lambda": "cum_lambda_fixed", "varpi": "cum_varpi_fixed", "pi": "cum_pi", "mobius": "cum_mobius"}
_SCALES = {"lambda": FIXED_SCALE, "varpi": FIXED_SCALE, "pi": 1, "mobius": 1, "ones": 1}


def _check_x(x: np.ndarray, table: SieveTable) -> None:
    if np.any(~(x > 0)) or np.any(~np.isfinite(x)):
        raise DomainError("sum functions need 0 < x")
    if np.any(x > table.limit):
        raise CoverageError(f"x = {float(np.max(x))} exceeds sieve limit {table.limit}")


def half_max_twice(table: SieveTable, field: str, x) -> np.ndarray:
    """Twice the half-maximum sum, as exact integers in units of the field scale."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _check_x(x, table)
    k = np.floor(x).astype(np.int64)
    lattice = k == x
    if field == "ones":
        return 2 * k - lattice.astype(np.int64)
    try:
        cum = getattr(table, _FIELDS[field])
    except KeyError:
        raise DomainError(f"unknown field {field!r}; choose from {sorted(_SCALES)}") from None
    cum = cum.astype(np.int64, copy=False)
    return np.where(lattice, cum[k] + cum[np.maximum(k - 1, 0)], 2 * cum[k])


def half_max_low_twice(table: SieveTable, x) -> np.ndarray:
    """Twice the half-maximum sum of the low words (units of 2^-70)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.floor(x).astype(np.int64)
    cum = table.cum_lambda_low
    return np.where(k == x, cum[k] + cum[np.maximum(k - 1, 0)], 2 * cum[k])


def _to_float(high: np.ndarray, low: np.ndarray | None, scale: int) -> np.ndarray:
    v = high / (2.0 * scale)
    if low is not None:
        v = v + low / (2.0 * scale * scale)
    return v


def half_max_values(table: SieveTable, field: str, x) -> np.ndarray:
    twice = half_max_twice(table, field, x)
    low = half_max_low_twice(table, x) if field in ("lambda", "varpi") else None
    return _to_float(twice, low, _SCALES[field])


def half_max_sum(table: SieveTable, field: str, x: float) -> SumFunctionValue:
    """Sum over n <= x with half weight on n = x when x is an integer."""
    x = float(x)
    v = float(half_max_values(table, field, x)[0])
    return SumFunctionValue(x, v, x == math.floor(x))


def _scalar_or_array(x, values):
    return float(values[0]) if np.ndim(x) == 0 else values


def psi(x, table: SieveTable | None = None):
    """Chebyshev psi with the half-maximum convention."""
    t = sieve_for(x, table)
    return _scalar_or_array(x, half_max_values(t, "lambda", x))


def varpi(x, table: SieveTable | None = None):
    """psi(x) minus the half-maximum count of integers up to x (direct path)."""
    t = sieve_for(x, table)
    return _scalar_or_array(x, half_max_values(t, "varpi", x))


def varpi_via_psi(x, table: SieveTable | None = None):
    """Same quantity computed as psi minus count, in exact fixed point."""
    t = sieve_for(x, table)
    twice = half_max_twice(t, "lambda", x) - FIXED_SCALE * half_max_twice(t, "ones", x)
    return _scalar_or_array(x, _to_float(twice, half_max_low_twice(t, x), FIXED_SCALE))


def count_ones(x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.floor(x)
    v = np.where(k == x, x - 0.5, k)
    return _scalar_or_array(x, v)


def prime_pi(x, table: SieveTable | None = None):
    """Prime counting function with half weight at primes."""
    t = sieve_for(x, table)
    return _scalar_or_array(x, half_max_values(t, "pi", x))


def mertens(x, table: SieveTable | None = None):
    t = sieve_for(x, table)
    return _scalar_or_array(x, half_max_values(t, "mobius", x))
