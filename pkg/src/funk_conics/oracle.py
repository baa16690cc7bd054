"""Brute-force verification that does not rely on any closed form.

Distances from and to a chord are obtained by sampling the chord densely
and refining the best sample by golden-section search; parabola residuals
combine these with the point-to-point distance only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import DiskPoint, as_point, funk_distance, funk_distance_array
from .lines import Direction, HorizontalLine

CHORD_SAMPLES = 10_000
SCAN_CHORD_SAMPLES = 256
SCAN_PITCH = 1.0 / 512.0
SCAN_MARGIN = 1e-6
_CHUNK = 65_536


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    argmax_point: DiskPoint | None
    n_checked: int

    def __post_init__(self) -> None:
        if not self.max_residual >= 0.0:
            raise ValueError("max_residual must be non-negative")


def _y0(s) -> float:
    return s.y0 if isinstance(s, HorizontalLine) else HorizontalLine(float(s)).y0


def line_distance_minimizer(P, s, direction, samples: int = CHORD_SAMPLES) -> tuple[float, float]:
    """``(distance, chord abscissa of the minimiser)`` by sampling the chord."""
    a, b = as_point(P)
    to_line = Direction(direction) is Direction.POINT_TO_LINE
    dist, arg = kernels.chord_minimum(np.array([a]), np.array([b]), _y0(s), to_line, samples)
    return float(dist[0]), float(arg[0])


def line_distance_bruteforce(P, s, direction, samples: int = CHORD_SAMPLES) -> float:
    return line_distance_minimizer(P, s, direction, samples)[0]


def _line_distances(x, y, y0: float, to_line: bool, samples: int) -> np.ndarray:
    out = np.empty(len(x))
    for i in range(0, len(x), _CHUNK):
        out[i:i + _CHUNK] = kernels.chord_minimum(x[i:i + _CHUNK], y[i:i + _CHUNK], y0, to_line, samples)[0]
    return out


def signed_residuals(x, y, spec, samples: int = CHORD_SAMPLES) -> np.ndarray:
    """``lhs - rhs`` of the defining property at each point (brute force)."""
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    kind = int(spec.kind)
    f0, g0, y0 = spec.f0, spec.g0, spec.y0
    if kind in (1, 3):
        d_focus = funk_distance_array(f0, g0, x, y)
    else:
        d_focus = funk_distance_array(x, y, f0, g0)
    d_line = _line_distances(x, y, y0, kind in (2, 3), samples)
    return d_line - d_focus if kind == 4 else d_focus - d_line


def parabola_residual(P, spec, samples: int = CHORD_SAMPLES) -> float:
    """``|lhs - rhs|`` of the defining property of ``spec`` at ``P``."""
    P = as_point(P)
    F = spec.focus
    kind = int(spec.kind)
    d_focus = funk_distance(F, P).distance if kind in (1, 3) else funk_distance(P, F).distance
    direction = Direction.POINT_TO_LINE if kind in (2, 3) else Direction.LINE_TO_POINT
    d_line = line_distance_bruteforce(P, HorizontalLine(spec.y0), direction, samples)
    return abs(d_focus - d_line)


def verify_points(points, spec, samples: int = CHORD_SAMPLES) -> ResidualReport:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return ResidualReport(0.0, None, 0)
    res = np.abs(signed_residuals(pts[:, 0], pts[:, 1], spec, samples))
    k = int(np.argmax(res))
    return ResidualReport(float(res[k]), DiskPoint(*pts[k]), len(pts))


def grid_scan(
    spec,
    pitch: float = SCAN_PITCH,
    chord_samples: int = SCAN_CHORD_SAMPLES,
    margin: float = SCAN_MARGIN,
) -> tuple[ResidualReport, np.ndarray]:
    """Sample the signed residual on a square grid over the disk.

    The near-zero cloud consists of the grid nodes adjacent to an edge along
    which the residual changes sign, so it hugs the zero set within one
    pitch whatever the local slope. The report gives the largest residual
    within the cloud and the number of nodes evaluated.
    """
    if not pitch > 0.0:
        raise ValueError("pitch must be positive")
    n = int(math.floor(1.0 / pitch))
    ticks = np.arange(-n, n + 1) * pitch
    X, Y = np.meshgrid(ticks, ticks, indexing="ij")
    inside = np.hypot(X, Y) <= 1.0 - margin
    R = np.full(X.shape, np.nan)
    R[inside] = signed_residuals(X[inside], Y[inside], spec, chord_samples)

    mark = np.zeros(X.shape, dtype=bool)
    with np.errstate(invalid="ignore"):
        for axis in (0, 1):
            a = R.take(range(0, R.shape[axis] - 1), axis=axis)
            b = R.take(range(1, R.shape[axis]), axis=axis)
            edge = (a == 0.0) | (a * b < 0.0)
            lo = [slice(None), slice(None)]
            hi = [slice(None), slice(None)]
            lo[axis] = slice(0, -1)
            hi[axis] = slice(1, None)
            mark[tuple(lo)] |= edge
            mark[tuple(hi)] |= edge
    mark &= inside
    cloud = np.column_stack((X[mark], Y[mark]))
    n_checked = int(inside.sum())
    if len(cloud) == 0:
        return ResidualReport(0.0, None, n_checked), cloud
    res = np.abs(R[mark])
    k = int(np.argmax(res))
    return ResidualReport(float(res[k]), DiskPoint(*cloud[k]), n_checked), cloud


def polyline_distance(points, polylines) -> np.ndarray:
    """Euclidean distance from each point to the nearest segment of any polyline."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    best = np.full(len(pts), np.inf)
    for line in polylines:
        line = np.asarray(line, dtype=float)
        if len(line) == 1:
            best = np.minimum(best, np.hypot(*(pts - line[0]).T))
            continue
        a = line[:-1]
        d = line[1:] - a
        dd = np.maximum((d * d).sum(axis=1), 1e-300)
        for i in range(0, len(pts), 512):
            p = pts[i:i + 512, None, :]
            t = np.clip(((p - a) * d).sum(axis=2) / dd, 0.0, 1.0)
            q = a + t[..., None] * d
            best[i:i + 512] = np.minimum(best[i:i + 512], np.hypot(*(p - q).transpose(2, 0, 1)).min(axis=1))
    return best


def type2_existence(spec, samples: int = 256) -> bool:
    """Intermediate-value check for a type-2 parabola.

    Along the segment from the focus to ``Q*``, the chord point nearest to the
    focus, ``f(t) = d(P_t, F) - d(P_t, Q*)`` must change sign.
    """
    f0, g0, y0 = spec.f0, spec.g0, spec.y0
    _, qx = line_distance_minimizer((f0, g0), HorizontalLine(y0), Direction.POINT_TO_LINE)
    t = np.linspace(0.0, 1.0, samples + 1)
    px = f0 + t * (qx - f0)
    py = g0 + t * (y0 - g0)
    f = funk_distance_array(px, py, f0, g0) - funk_distance_array(px, py, qx, y0)
    return bool(f.min() <= 0.0 <= f.max() and f[0] * f[-1] <= 0.0)
