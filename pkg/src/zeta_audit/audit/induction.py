"""Greedy descending sequences x_1 < ... < x_{L+1} = x with square-root sized steps."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ConstructionError, DomainError

NUDGE = 1e-6
MAX_NUDGES = 3


@dataclass(frozen=True)
class InductionSequence:
    x_target: float
    anchor: float
    L: int
    L0: int
    points: tuple

    def bracket(self, l: int) -> tuple:
        """(lo, hi] allowed for x_l given x_{l+1}; l is 1-based."""
        up = self.points[l]
        r = math.sqrt(up)
        return up - 0.5 * r, up - r / 3

    def violations(self) -> list:
        """Every broken invariant as a readable string (empty when the sequence is valid)."""
        bad = []
        pts = self.points
        if pts[-1] != self.x_target:
            bad.append("last point differs from the target")
        if len(pts) != self.L + 1:
            bad.append("point count differs from L + 1")
        for l in range(1, self.L + 1):
            lo, hi = self.bracket(l)
            if not lo < pts[l - 1] <= hi:
                bad.append(f"x_{l} = {pts[l - 1]!r} outside ({lo!r}, {hi!r}]")
        if any(p == math.floor(p) for p in pts):
            bad.append("integral point")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            bad.append("points not strictly ascending")
        if not pts[0] <= self.anchor:
            bad.append("x_1 above the anchor")
        if self.L >= 1 and not self.anchor < pts[1]:
            bad.append("x_2 not above the anchor")
        if self.L > self.L0:
            bad.append(f"L = {self.L} exceeds L0 = {self.L0}")
        f = 1 - 1 / (3 * math.sqrt(self.x_target))
        for l in range(1, self.L + 2):
            if pts[l - 1] > f ** (self.L + 1 - l) * self.x_target * (1 + 1e-15):
                bad.append(f"x_{l} exceeds the geometric envelope")
        return bad


def step_count_bound(x: float, anchor: float) -> int:
    return math.floor(3 * math.sqrt(x) * (math.log(x) - math.log(anchor))) + 2


def build_induction_sequence(x: float, anchor: float) -> InductionSequence:
    """Descend from x by bracket midpoints until a point lands at or below ``anchor``.

    Each x_l is the midpoint of (x_{l+1} - sqrt(x_{l+1})/2, x_{l+1} - sqrt(x_{l+1})/3],
    moved up by 1e-6 (at most three times) if it is an integer.
    """
    x, anchor = float(x), float(anchor)
    if x == math.floor(x):
        raise DomainError("x must not be an integer")
    if anchor < 100:
        raise DomainError("anchor must be at least 100")
    if not x > anchor:
        raise DomainError("x must exceed the anchor")
    L0 = step_count_bound(x, anchor)
    pts = [x]
    while pts[-1] > anchor:
        up = pts[-1]
        r = math.sqrt(up)
        lo, hi = up - 0.5 * r, up - r / 3
        assert lo < hi  # nonempty for every up > 0
        cand = 0.5 * (lo + hi)
        tries = 0
        while cand == math.floor(cand):
            tries += 1
            if tries > MAX_NUDGES:
                raise ConstructionError(f"cannot move the point below {up} off the integers")
            cand += NUDGE
            if not lo < cand <= hi:
                raise ConstructionError("integrality nudge left the bracket")
        pts.append(cand)
        if len(pts) - 1 > L0:
            raise ConstructionError(f"more than L0 = {L0} steps needed")
    seq = InductionSequence(x, anchor, len(pts) - 1, L0, tuple(reversed(pts)))
    bad = seq.violations()
    if bad:
        raise ConstructionError("; ".join(bad))
    return seq
