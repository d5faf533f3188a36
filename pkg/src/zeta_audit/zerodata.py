"""Zero ordinates: loading, counting, the Backlund band, associates, threshold functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CoverageError, DomainError, ParseError
from .numkernel import CONSTANTS


@dataclass(frozen=True)
class ZeroList:
    """Ascending positive ordinates of zeros, all taken on the critical line."""

    ordinates: np.ndarray
    source: str = ""

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=float)
        if g.size == 0:
            raise ParseError("zero list is empty")
        if np.any(g <= 0) or np.any(np.diff(g) <= 0):
            raise ParseError("zero ordinates must be positive and strictly ascending")
        g.flags.writeable = False
        object.__setattr__(self, "ordinates", g)

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    @property
    def last(self) -> float:
        return float(self.ordinates[-1])

    def __len__(self) -> int:
        return self.count

    def __getitem__(self, n: int) -> float:
        """1-based access: zl[1] is the lowest ordinate."""
        if not 1 <= n <= self.count:
            raise CoverageError(f"zero #{n} outside 1..{self.count}")
        return float(self.ordinates[n - 1])


def load_zeros(path) -> ZeroList:
    """Parse one ordinate per line; '#' lines and blank lines are skipped."""
    path = Path(path)
    values = []
    prev = -math.inf
    with path.open("r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                v = float(line)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number: {line!r}") from None
            if not math.isfinite(v):
                raise ParseError(f"{path}:{lineno}: non-finite ordinate")
            if v <= prev:
                raise ParseError(f"{path}:{lineno}: ordinate {v} is not above the previous one {prev}")
            if not values and v <= 14:
                raise ParseError(f"{path}:{lineno}: first ordinate {v} is not above 14")
            values.append(v)
            prev = v
    if not values:
        raise ParseError(f"{path}: empty zero list")
    return ZeroList(np.array(values), str(path))


def _covered(zl: ZeroList, T) -> np.ndarray:
    T = np.atleast_1d(np.asarray(T, dtype=float))
    if np.any(T > zl.last):
        raise CoverageError(f"T = {float(np.max(T))} exceeds the last loaded ordinate {zl.last}")
    return T


def count_zeros(zl: ZeroList, T):
    """N(T) = #{gamma_k <= T}; an exact hit counts with weight 1."""
    Tarr = _covered(zl, T)
    n = np.searchsorted(zl.ordinates, Tarr, side="right")
    return int(n[0]) if np.ndim(T) == 0 else n


def main_term(T):
    """M(T) = (T/2pi) log(T/2pi) - T/2pi."""
    a = np.asarray(T, dtype=float) / (2 * math.pi)
    return a * np.log(a) - a


def backlund_q(T):
    T = np.asarray(T, dtype=float)
    return 0.137 * np.log(T) + 0.443 * np.log(np.log(T)) + 1.588


@dataclass(frozen=True)
class BacklundResult:
    T: float
    N: int
    M: float
    Q: float
    deviation: float
    in_band: bool
    variant: str
    q_negative: bool


def backlund_band(zl: ZeroList, T: float, variant: str = "standard") -> BacklundResult:
    """Check |N(T) - M(T) - 7/8| <= Q(T) ('standard') or |N - M + 7/8| <= Q ('printed')."""
    T = float(T)
    if T < 2:
        raise DomainError("the band is defined for T >= 2")
    if variant not in ("standard", "printed"):
        raise DomainError(f"unknown variant {variant!r}")
    N = count_zeros(zl, T)
    M = float(main_term(T))
    Q = float(backlund_q(T))
    shift = 7 / 8 if variant == "standard" else -7 / 8
    dev = abs(N - M - shift)
    return BacklundResult(T, N, M, Q, dev, dev <= Q, variant, Q < 0)


@dataclass(frozen=True)
class DensityCount:
    count: int
    note: str


def count_zeros_density(zl: ZeroList, lam: float, T: float) -> DensityCount:
    """N(lambda, T) on critical-line data: N(T) if lambda <= 1/2, else 0."""
    if lam > 1:
        return DensityCount(0, "no zeros have real part above 1")
    if lam <= 0.5:
        return DensityCount(count_zeros(zl, T), "all loaded zeros lie on the critical line")
    _covered(zl, T)
    return DensityCount(0, "loaded data holds critical-line zeros only, so the count is 0 by construction")


@dataclass(frozen=True)
class Associate:
    t_center: float
    u_halfwidth: float
    T_check: float
    n: int
    degenerate: bool
    window: tuple = field(default=())
    min_separation: float = math.inf

    @property
    def separation_ok(self) -> bool:
        """Every window zero sits at least u/(2n) away from the associate."""
        if self.n < 2:
            return True
        return self.min_separation >= self.u_halfwidth / (2 * self.n)


def associate(zl: ZeroList, t: float, u: float) -> Associate:
    """Midpoint of the widest gap between consecutive window zeros in [t-u, t+u].

    Ties go to the lowest gap. With fewer than two window zeros there is no
    internal gap and the centre t is returned with ``degenerate`` set.
    """
    t, u = float(t), float(u)
    if not u > 0:
        raise DomainError("u must be positive")
    if t + u > zl.last:
        raise CoverageError(f"window [{t - u}, {t + u}] exceeds data coverage {zl.last}")
    g = zl.ordinates
    lo = np.searchsorted(g, t - u, side="left")
    hi = np.searchsorted(g, t + u, side="right")
    z = g[lo:hi]
    n = int(z.size)
    if n <= 1:
        sep = float(np.min(np.abs(z - t))) if n else math.inf
        return Associate(t, u, t, n, True, tuple(z.tolist()), sep)
    gaps = np.diff(z)
    l = int(np.argmax(gaps))
    Tc = 0.5 * (z[l] + z[l + 1])
    sep = float(np.min(np.abs(z - Tc)))
    return Associate(t, u, float(Tc), n, False, tuple(z.tolist()), sep)


N7 = tuple(range(7))


@dataclass(frozen=True)
class PiecewiseThreshold:
    j: int

    def __post_init__(self):
        if self.j not in N7:
            raise DomainError(f"j must lie in 0..6, got {self.j}")

    @property
    def w(self) -> int:
        return (self.j - 3) ** 2 + 4


def threshold_H(j: int, x, joint: float = CONSTANTS.x2):
    """H_j(x): 1/2 on [1, joint), 2 / log^{(7-j)/12} x from ``joint`` on."""
    PiecewiseThreshold(j)
    x = np.asarray(x, dtype=float)
    if np.any(x < 1):
        raise DomainError("H_j is defined for x >= 1")
    with np.errstate(divide="ignore"):
        right = 2.0 / np.log(np.maximum(x, joint)) ** ((7 - j) / 12)
    v = np.where(x < joint, 0.5, right)
    return float(v) if v.ndim == 0 else v


def threshold_h(j: int, t, reading: str = "power", T0: float = CONSTANTS.T0):
    """h_j(t): 1/2 for |t| < T0, else the decaying tail.

    reading='power' gives 1/(2 |t|^{(7-j)w/12}); reading='exponential' gives 2^{-|t|(7-j)w/12}.
    """
    w = PiecewiseThreshold(j).w
    a = np.abs(np.asarray(t, dtype=float))
    e = (7 - j) * w / 12
    big = np.maximum(a, T0)
    if reading == "power":
        tail = 0.5 * np.exp(-e * np.log(big))
    elif reading == "exponential":
        tail = np.exp(-big * e * math.log(2))
    else:
        raise DomainError(f"unknown reading {reading!r}")
    v = np.where(a < T0, 0.5, tail)
    return float(v) if v.ndim == 0 else v


def log_threshold_H(j: int, log_x: float) -> float:
    """log H_j at x = e^{log_x} (beyond the joint), usable far outside float range."""
    PiecewiseThreshold(j)
    return math.log(2) - (7 - j) / 12 * math.log(log_x)


def log_threshold_h(j: int, log_t: float) -> float:
    """log h_j(t) for |t| = e^{log_t} >= T0 under the power reading."""
    w = PiecewiseThreshold(j).w
    return -math.log(2) - (7 - j) * w / 12 * log_t
