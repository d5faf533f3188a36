"""Oriented integration paths made of smooth parametrized pieces.

A :class:`Piece` maps a real parameter interval ``[u0, u1]`` onto the complex
plane. Integrals along a piece are computed as ``int f(s(u)) s'(u) du``, so the
orientation of a piece is the direction of increasing ``u``; reversing a piece
swaps the parameter direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Piece:
    point: ArrayFn
    deriv: ArrayFn
    u0: float
    u1: float
    name: str = ""

    def reversed(self) -> "Piece":
        p, d, a, b = self.point, self.deriv, self.u0, self.u1
        return Piece(
            point=lambda u: p(a + b - u),
            deriv=lambda u: -d(a + b - u),
            u0=a,
            u1=b,
            name=self.name,
        )

    @property
    def start(self) -> complex:
        return complex(self.point(np.array([self.u0]))[0])

    @property
    def end(self) -> complex:
        return complex(self.point(np.array([self.u1]))[0])


def segment(a: complex, b: complex, name: str = "") -> Piece:
    a, b = complex(a), complex(b)
    d = b - a
    return Piece(
        point=lambda u: a + d * np.asarray(u, dtype=float),
        deriv=lambda u: np.full(np.shape(u), d, dtype=complex),
        u0=0.0,
        u1=1.0,
        name=name,
    )


def arc(center: complex, radius: float, theta0: float, theta1: float, name: str = "") -> Piece:
    """Circular arc ``center + radius e^{i theta}``, theta running theta0 -> theta1."""
    c, r = complex(center), float(radius)
    lo, hi = float(theta0), float(theta1)
    span = hi - lo

    def point(u):
        th = lo + span * np.asarray(u, dtype=float)
        return c + r * np.exp(1j * th)

    def deriv(u):
        th = lo + span * np.asarray(u, dtype=float)
        return 1j * r * span * np.exp(1j * th)

    return Piece(point, deriv, 0.0, 1.0, name)


def polar(radius: ArrayFn, dradius: ArrayFn, theta0: float, theta1: float, name: str = "") -> Piece:
    """Polar piece ``s(theta) = r(theta) e^{i theta}`` with theta running theta0 -> theta1.

    ``ds = (r'(theta) + i r(theta)) e^{i theta} dtheta``.
    """
    lo, hi = float(theta0), float(theta1)
    span = hi - lo

    def point(u):
        th = lo + span * np.asarray(u, dtype=float)
        return radius(th) * np.exp(1j * th)

    def deriv(u):
        th = lo + span * np.asarray(u, dtype=float)
        return span * (dradius(th) + 1j * radius(th)) * np.exp(1j * th)

    return Piece(point, deriv, 0.0, 1.0, name)


@dataclass(frozen=True)
class ContourSpec:
    """An oriented path: ordered smooth pieces plus the parameters that built them."""

    kind: str
    pieces: tuple[Piece, ...]
    params: dict = field(default_factory=dict)

    def reversed(self) -> "ContourSpec":
        return ContourSpec(self.kind + "_reversed", tuple(p.reversed() for p in reversed(self.pieces)), dict(self.params))

    def length_bound(self, samples: int = 513) -> float:
        """Polygonal estimate of the path length (used for ML-inequality bounds)."""
        total = 0.0
        for p in self.pieces:
            z = p.point(np.linspace(p.u0, p.u1, samples))
            total += float(np.sum(np.abs(np.diff(z))))
        return total


def vertical_segment(m: float, T_check: float) -> ContourSpec:
    """The segment from ``m - iT`` up to ``m + iT``."""
    return ContourSpec("vertical_segment", (segment(m - 1j * T_check, m + 1j * T_check, "M"),), {"m": m, "T_check": T_check})


def left_half_circle(m: float, T_check: float) -> ContourSpec:
    """Left half of ``|s - m| = T``, counter-clockwise from ``m + iT`` to ``m - iT``."""
    return ContourSpec(
        "left_half_circle",
        (arc(m, T_check, math.pi / 2, 3 * math.pi / 2, "L"),),
        {"m": m, "T_check": T_check},
    )


def right_half_circle(m: float, T_check: float) -> ContourSpec:
    """Right half of ``|s - m| = T``, clockwise from ``m + iT`` to ``m - iT``."""
    return ContourSpec(
        "right_half_circle",
        (arc(m, T_check, math.pi / 2, -math.pi / 2, "R"),),
        {"m": m, "T_check": T_check},
    )


def full_circle(center: complex, radius: float) -> ContourSpec:
    return ContourSpec("circle", (arc(center, radius, 0.0, 2 * math.pi, "C"),), {"center": center, "radius": radius})


def rectangle_right(m: float, T_check: float, offset: float) -> ContourSpec:
    """Three segments ``m+iT -> m+a+iT -> m+a-iT -> m-iT`` (clockwise, right of the line)."""
    a = float(offset)
    pts = [m + 1j * T_check, m + a + 1j * T_check, m + a - 1j * T_check, m - 1j * T_check]
    return ContourSpec(
        "rectangle_right",
        tuple(segment(pts[k], pts[k + 1], f"R{k}") for k in range(3)),
        {"m": m, "T_check": T_check, "offset": a},
    )


def rectangle_left(m: float, T_check: float, offset: float) -> ContourSpec:
    """Three segments ``m+iT -> -a+iT -> -a-iT -> m-iT`` (counter-clockwise, left of the line)."""
    a = float(offset)
    pts = [m + 1j * T_check, -a + 1j * T_check, -a - 1j * T_check, m - 1j * T_check]
    return ContourSpec(
        "rectangle_left",
        tuple(segment(pts[k], pts[k + 1], f"L{k}") for k in range(3)),
        {"m": m, "T_check": T_check, "offset": a},
    )
