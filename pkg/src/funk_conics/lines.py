"""Funk distances between points and chords, in both directions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DiskPoint, DomainError, as_point, rho


class Direction(enum.Enum):
    POINT_TO_LINE = "point-to-line"
    LINE_TO_POINT = "line-to-point"


@dataclass(frozen=True)
class HorizontalLine:
    """The chord ``y = y0`` of the unit disk."""

    y0: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "y0", float(self.y0))
        if not (-1.0 < self.y0 < 1.0):
            raise DomainError(f"line ordinate y0={self.y0!r} must lie in (-1, 1)")

    @property
    def half_width(self) -> float:
        return math.sqrt((1.0 - self.y0) * (1.0 + self.y0))


@dataclass(frozen=True)
class GeneralLine:
    """Image of ``y = offset`` under the rotation by ``theta`` radians."""

    theta: float
    offset: float

    def __post_init__(self) -> None:
        if not (-1.0 < self.offset < 1.0):
            raise DomainError(f"line offset {self.offset!r} must lie in (-1, 1)")

    def contains(self, point, tol: float = 1e-12) -> bool:
        x, y = point
        return abs(-x * math.sin(self.theta) + y * math.cos(self.theta) - self.offset) < tol


@dataclass(frozen=True)
class LineDistanceResult:
    """Distance and the chord point realising it.

    ``attained`` is False when the infimum is only approached at a chord
    endpoint; ``witness`` is then that endpoint, which lies on the circle.
    """

    distance: float
    witness: tuple[float, float]
    attained: bool = True


def _as_line(s) -> HorizontalLine:
    return s if isinstance(s, HorizontalLine) else HorizontalLine(float(s))


def point_to_line(P, s) -> LineDistanceResult:
    """Distance from ``P = (a, b)`` to the chord ``y = c``: ``ln rho(b, c)``."""
    a, b = as_point(P)
    c = _as_line(s).y0
    r = rho(b, c)
    return LineDistanceResult(math.log(r), (a / r, c))


def boundary_distance(E, P) -> float:
    """Limit of ``d(Q, P)`` as ``Q`` tends to the circle point ``E``.

    Equals ``log1p(|P - E|^2 / (1 - |P|^2))``.
    """
    e1, e2 = E
    p1, p2 = as_point(P)
    return math.log1p(((p1 - e1) ** 2 + (p2 - e2) ** 2) / (1.0 - p1 * p1 - p2 * p2))


def line_to_point(s, P) -> LineDistanceResult:
    """Distance from the chord ``y = c`` to ``P = (a, b)``.

    ``ln rho(c, b)`` with witness ``(a rho(c, b), c)`` while that witness is
    on the chord. Otherwise the distance decreases monotonically towards the
    chord endpoint on the witness side, and the boundary limit there is
    returned with ``attained=False``.
    """
    a, b = as_point(P)
    line = _as_line(s)
    c = line.y0
    r = rho(c, b)
    wx = a * r
    w = line.half_width
    if abs(wx) < w:
        return LineDistanceResult(math.log(r), (wx, c))
    end = (math.copysign(w, a), c)
    return LineDistanceResult(boundary_distance(end, (a, b)), end, attained=False)


def line_distance(P, s, direction: Direction) -> LineDistanceResult:
    if Direction(direction) is Direction.POINT_TO_LINE:
        return point_to_line(P, s)
    return line_to_point(s, P)


def _rho_array(eps, eta):
    sg = np.sign(eps - eta)
    return (1.0 + sg * eps) / (1.0 + sg * eta)


def line_distance_array(x, y, y0: float, direction: Direction) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised closed forms; returns ``(distance, attained)`` arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if Direction(direction) is Direction.POINT_TO_LINE:
        r = _rho_array(y, y0)
        return np.log(r), np.ones(np.broadcast(x, y).shape, dtype=bool)
    r = _rho_array(y0, y)
    w = math.sqrt((1.0 - y0) * (1.0 + y0))
    inside = np.abs(x * r) < w
    ex = np.copysign(w, x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        lim = np.log1p(((x - ex) ** 2 + (y - y0) ** 2) / (1.0 - x * x - y * y))
        return np.where(inside, np.log(r), lim), inside


def rotate(points, angle: float) -> np.ndarray:
    """Rotate an ``(n, 2)`` array of points counter-clockwise by ``angle``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    c, s = math.cos(angle), math.sin(angle)
    return np.column_stack((c * pts[:, 0] - s * pts[:, 1], s * pts[:, 0] + c * pts[:, 1]))


def reduce_to_horizontal(line: GeneralLine, points) -> tuple[HorizontalLine, list[DiskPoint]]:
    """Rotate the plane by ``-theta`` so that ``line`` becomes horizontal.

    Funk distances are rotation invariant, so distances computed in the
    returned frame equal those in the original one.
    """
    pts = [as_point(p) for p in points]
    if not pts:
        return HorizontalLine(line.offset), []
    rotated = rotate([tuple(p) for p in pts], -line.theta)
    return HorizontalLine(line.offset), [DiskPoint(*row) for row in rotated]
