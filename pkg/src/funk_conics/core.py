"""Funk metric on the open unit disk: norm, distance and Funk arc length."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

#: Points closer than this to the unit circle are rejected.
BOUNDARY_MARGIN = 1e-12
#: Negative radicands smaller than this in magnitude are rounding noise.
RADICAND_NOISE = 1e-15
#: Displacements shorter than this yield an exact zero distance.
COINCIDENCE_TOL = 1e-15
#: Per-segment relative tolerance of the arc-length quadrature.
QUAD_EPSREL = 1e-10


class DomainError(ValueError):
    """An argument lies outside the region where the metric is defined."""


def _check_inside(x1: float, x2: float, what: str = "point") -> None:
    if not (math.isfinite(x1) and math.isfinite(x2)):
        raise DomainError(f"{what} ({x1!r}, {x2!r}) is not finite")
    if math.hypot(x1, x2) > 1.0 - BOUNDARY_MARGIN:
        raise DomainError(
            f"{what} ({x1!r}, {x2!r}) must satisfy |x| <= 1 - {BOUNDARY_MARGIN:g} "
            "(strictly inside the unit disk)"
        )


@dataclass(frozen=True)
class DiskPoint:
    x1: float
    x2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x1", float(self.x1))
        object.__setattr__(self, "x2", float(self.x2))
        _check_inside(self.x1, self.x2)

    def __iter__(self):
        yield self.x1
        yield self.x2

    @property
    def norm(self) -> float:
        return math.hypot(self.x1, self.x2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2])


@dataclass(frozen=True)
class TangentVector:
    y1: float
    y2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "y1", float(self.y1))
        object.__setattr__(self, "y2", float(self.y2))
        if not (math.isfinite(self.y1) and math.isfinite(self.y2)):
            raise DomainError(f"tangent vector ({self.y1!r}, {self.y2!r}) is not finite")

    def __iter__(self):
        yield self.y1
        yield self.y2


@dataclass(frozen=True)
class FunkDistanceResult:
    r: float
    k: float
    distance: float


def as_point(p) -> DiskPoint:
    """Coerce a ``DiskPoint`` or any length-2 sequence to a ``DiskPoint``."""
    if isinstance(p, DiskPoint):
        return p
    x1, x2 = p
    return DiskPoint(x1, x2)


def funk_norm(base, direction) -> float:
    """Funk norm of ``direction`` attached at ``base``.

    Written as ``(sqrt(q) + <x,y>) / (1 - |x|^2)`` with
    ``q = (1 - |x|^2)|y|^2 + <x,y>^2``; for inward directions the numerator
    is rationalised to avoid cancellation.
    """
    x1, x2 = as_point(base)
    y1, y2 = TangentVector(*direction)
    yy = y1 * y1 + y2 * y2
    if yy == 0.0:
        return 0.0
    one_minus = 1.0 - x1 * x1 - x2 * x2
    u = x1 * y1 + x2 * y2
    root = math.sqrt(one_minus * yy + u * u)
    if u >= 0.0:
        return (root + u) / one_minus
    return yy / (root - u)


def rho(eps: float, eta: float) -> float:
    """Ratio ``(1 + sgn(eps-eta) eps) / (1 + sgn(eps-eta) eta)``, always >= 1.

    Accepts signed ordinates in ``(-1, 1)``.
    """
    for name, v in (("eps", eps), ("eta", eta)):
        if not (-1.0 < v < 1.0):
            raise DomainError(f"rho argument {name}={v!r} must lie in (-1, 1)")
    sg = (eps > eta) - (eps < eta)
    return (1.0 + sg * eps) / (1.0 + sg * eta)


def _exit_parameter(x1, x2, d1, d2, dd, sqrt_k):
    """Parameter s > 0 with |X + s d| = 1 for X inside the disk."""
    w = x1 * d1 + x2 * d2
    if w > 0.0:
        return (1.0 - x1 * x1 - x2 * x2) / (sqrt_k + w)
    return (sqrt_k - w) / dd


def funk_distance(P, Q) -> FunkDistanceResult:
    """Funk distance from ``P`` to ``Q`` (not symmetric).

    ``r`` is the ratio whose logarithm is the distance and ``k`` the
    radicand ``<P,Q-P>^2 + (1-|P|^2)|Q-P|^2``. Numerically the ratio is
    evaluated as ``1 + 1/s`` where ``s`` is the parameter at which the ray
    from ``Q`` along ``Q - P`` leaves the disk; this is algebraically the
    same quotient but free of the cancellation in its denominator.
    """
    p1, p2 = as_point(P)
    q1, q2 = as_point(Q)
    d1, d2 = q1 - p1, q2 - p2
    dd = d1 * d1 + d2 * d2
    cross = p1 * d2 - p2 * d1
    k = dd - cross * cross
    if k < 0.0:
        if k < -RADICAND_NOISE:
            raise DomainError(f"negative radicand k={k!r}")
        k = 0.0
    if math.sqrt(dd) < COINCIDENCE_TOL:
        return FunkDistanceResult(r=1.0, k=k, distance=0.0)
    s = _exit_parameter(q1, q2, d1, d2, dd, math.sqrt(k))
    inv = 1.0 / s
    return FunkDistanceResult(r=1.0 + inv, k=k, distance=math.log1p(inv))


def _distance_unchecked(p1: float, p2: float, q1: float, q2: float) -> float:
    # scalar fast path of funk_distance for inner loops; inputs assumed valid
    d1, d2 = q1 - p1, q2 - p2
    dd = d1 * d1 + d2 * d2
    if dd < COINCIDENCE_TOL * COINCIDENCE_TOL:
        return 0.0
    cross = p1 * d2 - p2 * d1
    k = max(dd - cross * cross, 0.0)
    return math.log1p(1.0 / _exit_parameter(q1, q2, d1, d2, dd, math.sqrt(k)))


def distance(P, Q) -> float:
    """Shorthand for ``funk_distance(P, Q).distance``."""
    return funk_distance(P, Q).distance


def funk_distance_array(px, py, qx, qy) -> np.ndarray:
    """Vectorised Funk distance; arguments broadcast, no domain checks."""
    px, py, qx, qy = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (px, py, qx, qy))
    )
    d1 = qx - px
    d2 = qy - py
    dd = d1 * d1 + d2 * d2
    cross = px * d2 - py * d1
    sk = np.sqrt(np.maximum(dd - cross * cross, 0.0))
    w = qx * d1 + qy * d2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(
            w > 0.0,
            (1.0 - qx * qx - qy * qy) / (sk + w),
            (sk - w) / dd,
        )
        out = np.log1p(1.0 / s)
    return np.where(np.sqrt(dd) < COINCIDENCE_TOL, 0.0, out)


def verify_distance_relation(P, Q, r: float) -> float:
    """Residual of ``|P/r - Q| = (r-1)/r``; vanishes iff ``d(P,Q) = ln r``."""
    p1, p2 = as_point(P)
    q1, q2 = as_point(Q)
    if not r >= 1.0:
        raise DomainError(f"r={r!r} must be >= 1")
    lhs = math.hypot(p1 / r - q1, p2 / r - q2)
    return abs(lhs - (r - 1.0) / r)


@dataclass(frozen=True)
class SampledCurve:
    """Piecewise-linear curve through ``(t, point)`` samples."""

    samples: tuple

    def __post_init__(self) -> None:
        pts = tuple((float(t), as_point(p)) for t, p in self.samples)
        if len(pts) < 2:
            raise DomainError("a sampled curve needs at least 2 samples")
        ts = [t for t, _ in pts]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("sample parameters must be strictly increasing")
        object.__setattr__(self, "samples", pts)

    @classmethod
    def chord(cls, P, Q, n: int = 2) -> "SampledCurve":
        """Straight segment from ``P`` to ``Q`` with ``n`` equispaced samples."""
        p = as_point(P).as_array()
        q = as_point(Q).as_array()
        ts = np.linspace(0.0, 1.0, n)
        return cls(tuple((t, tuple(p + t * (q - p))) for t in ts))

    @classmethod
    def from_points(cls, points: Sequence) -> "SampledCurve":
        return cls(tuple((float(i), p) for i, p in enumerate(points)))


def _segment_length(a: DiskPoint, b: DiskPoint) -> float:
    d1, d2 = b.x1 - a.x1, b.x2 - a.x2
    if d1 == 0.0 and d2 == 0.0:
        return 0.0

    # the parameter map of each segment cancels by positive homogeneity
    def integrand(u):
        return funk_norm((a.x1 + u * d1, a.x2 + u * d2), (d1, d2))

    val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=QUAD_EPSREL, limit=200)
    return val


def arc_length(curve: SampledCurve) -> float:
    """Funk length of a sampled curve by adaptive quadrature per segment."""
    pts = [p for _, p in curve.samples]
    return math.fsum(_segment_length(a, b) for a, b in zip(pts, pts[1:]))
