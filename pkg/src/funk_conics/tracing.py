"""Polyline tracing of Funk parabolas.

Types 1 and 2 are swept along ``y`` (equivalently ``ybar``) and the
quadratic in ``x`` is solved at each station; types 3 and 4 are swept along
``x`` and the quartic in ``ybar`` is solved per branch. Where the algebraic
equation of a type-1 or type-4 parabola stops describing the locus (see
:func:`parabola.paper_form_valid`) the stations are completed by bracketing
the exact residual along the station line.

Stations whose root count differs are bisected so that folds and clipping
points are located precisely; chains of roots are then linked across
stations and chain ends that meet are joined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .parabola import (
    Branch,
    ParabolaSpec,
    ParabolaType,
    conic_coefficients,
    definition_residual,
    definition_residual_scalar,
    degenerate_x,
    paper_form_valid,
    type34_coefficients,
)

DEFAULT_RESOLUTION = 800
DEFAULT_TOLERANCE = 1e-9
DEFAULT_MARGIN = 1e-6
BRACKET_SAMPLES = 256
REFINE_WIDTH = 1e-13
REFINE_BUDGET = 40  # extra stations per sweep station
JOIN_TOL = 1e-5
MAX_LINK = 0.1
DEDUPE_TOL = 1e-10
IMAG_TOL = 1e-10
POLISH_TOL = 1e-12
# roots of the squared equations that miss the definition by more than this
# are extraneous; the caller's tolerance is applied after assembly
SPURIOUS_TOL = 1e-6


@dataclass
class LocusPolyline:
    """Traced locus, one ``(n, 2)`` array per connected component."""

    spec: ParabolaSpec
    components: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    sweep_axis: str = "y"

    @property
    def points(self) -> np.ndarray:
        if not self.components:
            return np.empty((0, 2))
        return np.vstack(self.components)

    @property
    def residual(self) -> np.ndarray:
        if not self.residuals:
            return np.empty(0)
        return np.concatenate(self.residuals)

    def __len__(self) -> int:
        return sum(len(c) for c in self.components)

    @property
    def empty(self) -> bool:
        return len(self) == 0

    def sides(self) -> list[str]:
        """Side of the directrix of each point: ``below``, ``above`` or ``on``."""
        y0 = self.spec.y0
        return ["below" if y < y0 else "above" if y > y0 else "on" for y in self.points[:, 1]]


# --- station solvers ---------------------------------------------------------


def _dedupe(pts: list) -> list:
    out = []
    for p in pts:
        if not any(abs(p[0] - q[0]) < DEDUPE_TOL and abs(p[1] - q[1]) < DEDUPE_TOL for q in out):
            out.append(p)
    return out


def _bracket_line(
    g: Callable[[np.ndarray], np.ndarray],
    g1: Callable[[float], float],
    lo: float,
    hi: float,
    n: int,
) -> list[float]:
    """Roots of a continuous function on ``[lo, hi]`` by sign changes.

    ``g`` is the vectorised form used for the scan, ``g1`` its scalar form
    used by the root finder.
    """
    if not hi > lo:
        return []
    ts = np.linspace(lo, hi, n)
    vals = g(ts)
    a, b = vals[:-1], vals[1:]
    ok = np.isfinite(a) & np.isfinite(b)
    roots = [float(ts[i]) for i in np.flatnonzero(ok & (a == 0.0))]
    for i in np.flatnonzero(ok & (a * b < 0.0)):
        roots.append(brentq(g1, ts[i], ts[i + 1], xtol=1e-15, rtol=1e-15, maxiter=200))
    if vals[-1] == 0.0:
        roots.append(float(ts[-1]))
    return sorted(roots)


class _Station:
    """Root finder for one spec along a family of parallel station lines."""

    def __init__(self, spec: ParabolaSpec, margin: float):
        self.spec = spec
        self.rmax = 1.0 - margin
        self.bracket = spec.kind in (ParabolaType.TYPE1, ParabolaType.TYPE4)

    def _accept(self, cands: list) -> np.ndarray:
        if not cands:
            return np.empty((0, 2))
        arr = np.array(cands, dtype=float)
        keep = np.hypot(arr[:, 0], arr[:, 1]) <= self.rmax
        arr = arr[keep]
        if len(arr):
            res = np.abs(definition_residual(self.spec, arr[:, 0], arr[:, 1]))
            arr = arr[res < SPURIOUS_TOL]
        return arr


class _ConicStation(_Station):
    axis = "y"

    def __init__(self, spec, margin):
        super().__init__(spec, margin)
        self.co = conic_coefficients(spec)
        self.sign = spec.sign

    def range(self) -> tuple[float, float]:
        if self.sign > 0:
            return -self.rmax, self.spec.y0
        return self.spec.y0, self.rmax

    def extra(self) -> list[float]:
        co = self.co
        # nonzero root in ybar of the x-discriminant: fold of the conic
        return [float(co.y_from_ybar(4.0 * co.E / co.discriminant))]

    def __call__(self, y: float) -> np.ndarray:
        spec, co = self.spec, self.co
        if not self.sign * (spec.y0 - y) > 0:
            return np.empty((0, 2))
        yb = co.ybar(y)
        b = co.B * yb
        c = co.C * yb * yb + co.E * yb
        disc = b * b - 4.0 * c
        cands = []
        if disc >= -1e-14 * max(1.0, b * b):
            sq = math.sqrt(max(disc, 0.0))
            q = -0.5 * (b + math.copysign(sq, b))
            xs = [q, c / q] if q != 0.0 else [0.0, 0.0]
            for x in xs:
                if paper_form_valid(spec, x, y):
                    cands.append((x, y))
        if self.bracket:
            half = math.sqrt(max(self.rmax ** 2 - y * y, 0.0))
            g = lambda xs: definition_residual(spec, xs, np.full_like(xs, y))
            g1 = lambda t: definition_residual_scalar(spec, t, y)
            for x in _bracket_line(g, g1, -half, half, BRACKET_SAMPLES):
                if not paper_form_valid(spec, x, y):
                    cands.append((x, y))
        pts = self._accept(_dedupe(cands))
        return pts[np.argsort(pts[:, 0], kind="stable")] if len(pts) else pts


class _QuarticStation(_Station):
    axis = "x"

    def __init__(self, spec, margin):
        super().__init__(spec, margin)
        self.branches = [type34_coefficients(spec, b) for b in Branch]

    def range(self) -> tuple[float, float]:
        return -self.rmax, self.rmax

    def extra(self) -> list[float]:
        return [self.spec.f0]

    def __call__(self, x: float) -> np.ndarray:
        spec = self.spec
        cands = []
        for co in self.branches:
            for yb in co.ybar_roots(x, IMAG_TOL):
                y = float(co.y_from_ybar(yb))
                if not co.branch.sign * (spec.y0 - y) > 0:
                    continue
                if abs(co.evaluate(x, y)) > POLISH_TOL * max(1.0, abs(co.D), abs(co.C)):
                    continue
                if paper_form_valid(spec, x, y):
                    cands.append((x, y))
        if self.bracket:
            half = math.sqrt(max(self.rmax ** 2 - x * x, 0.0))
            g = lambda ys: definition_residual(spec, np.full_like(ys, x), ys)
            g1 = lambda t: definition_residual_scalar(spec, x, t)
            for y in _bracket_line(g, g1, -half, half, BRACKET_SAMPLES):
                if not paper_form_valid(spec, x, y):
                    cands.append((x, y))
        pts = self._accept(_dedupe(cands))
        return pts[np.argsort(pts[:, 1], kind="stable")] if len(pts) else pts


class _DegenerateStation(_Station):
    axis = "y"

    def range(self) -> tuple[float, float]:
        return -self.rmax, self.rmax

    def extra(self) -> list[float]:
        return [self.spec.y0]

    def __call__(self, y: float) -> np.ndarray:
        x = float(degenerate_x(self.spec, y))
        return self._accept([(x, y)])


# --- sweep and linking -------------------------------------------------------


def _sweep(station, n: int) -> tuple[list[float], dict]:
    lo, hi = station.range()
    ts = set(np.linspace(lo, hi, max(n, 2)).tolist())
    ts.update(t for t in station.extra() if lo < t < hi)
    data = {t: station(t) for t in ts}
    budget = [REFINE_BUDGET * max(n, 2)]

    def refine(a: float, b: float) -> None:
        if len(data[a]) == len(data[b]) or b - a < REFINE_WIDTH or budget[0] <= 0:
            return
        budget[0] -= 1
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            return
        data[m] = station(m)
        refine(a, m)
        refine(m, b)

    base = sorted(data)
    for a, b in zip(base, base[1:]):
        refine(a, b)
    return sorted(data), data


def _link(stations: list[float], data: dict) -> list[list]:
    chains: list[list] = []
    open_: list[list] = []
    prev = -1
    for t in stations:
        pts = data[t]
        if len(pts) == prev and prev > 0:
            for j, p in enumerate(pts):
                chain = open_[j]
                if math.dist(chain[-1], p) > MAX_LINK:
                    chains.append(chain)
                    open_[j] = [tuple(p)]
                else:
                    chain.append(tuple(p))
        else:
            chains.extend(open_)
            open_ = [[tuple(p)] for p in pts]
        prev = len(pts)
    chains.extend(open_)
    return chains


def _join(chains: list[list]) -> list[tuple[list, bool]]:
    """Join chain ends closer than ``JOIN_TOL``; returns ``(points, closed)``."""
    ends = []
    for i, c in enumerate(chains):
        ends.append((i, 0, c[0]))
        ends.append((i, 1, c[-1]))
    cand = []
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            ia, ea, pa = ends[a]
            ib, eb, pb = ends[b]
            if ia == ib and len(chains[ia]) < 3:
                continue
            dd = math.dist(pa, pb)
            if dd < JOIN_TOL:
                cand.append((dd, a, b))
    cand.sort()
    partner: dict[int, int] = {}
    for _, a, b in cand:
        if a not in partner and b not in partner:
            partner[a] = b
            partner[b] = a

    used = [False] * len(chains)
    out = []

    def walk(start_chain: int, start_end: int) -> tuple[list, bool]:
        # traverse from the free (or chosen) end start_end of start_chain
        pts: list = []
        i, e = start_chain, start_end
        while True:
            used[i] = True
            seq = chains[i] if e == 0 else chains[i][::-1]
            if pts and pts[-1] == seq[0]:
                seq = seq[1:]
            pts.extend(seq)
            exit_end = 2 * i + (1 - e)
            nxt = partner.get(exit_end)
            if nxt is None:
                return pts, False
            j, ej = divmod(nxt, 2)
            if used[j]:
                return pts, j == start_chain
            i, e = j, ej

    # open paths first: start from chain ends without a partner
    for k in range(len(ends)):
        i, e = divmod(k, 2)
        if not used[i] and k not in partner:
            out.append(walk(i, e))
    for i in range(len(chains)):
        if not used[i]:
            out.append(walk(i, 0))
    return out


def _orient(pts: np.ndarray, closed: bool, axis: int) -> np.ndarray:
    if closed:
        k = int(np.argmin(pts[:, axis]))
        pts = np.vstack((pts[k:], pts[:k]))
        return np.vstack((pts, pts[:1]))
    if pts[-1, axis] < pts[0, axis]:
        pts = pts[::-1]
    return pts


def trace_locus(
    spec: ParabolaSpec,
    resolution: int = DEFAULT_RESOLUTION,
    tolerance: float = DEFAULT_TOLERANCE,
    margin: float = DEFAULT_MARGIN,
) -> LocusPolyline:
    """Trace the Funk parabola of ``spec`` as ordered polylines.

    Every returned point lies within ``1 - margin`` of the origin and
    satisfies the defining equality to within ``tolerance``. Components are
    ordered by their smallest sweep coordinate; closed components repeat
    their first point at the end.
    """
    if spec.kind in (ParabolaType.TYPE1, ParabolaType.TYPE2):
        station = (_DegenerateStation if spec.degenerate else _ConicStation)(spec, margin)
    else:
        station = _QuarticStation(spec, margin)
    axis = 1 if station.axis == "y" else 0
    ts, data = _sweep(station, resolution)
    components = []
    for pts, closed in _join(_link(ts, data)):
        if len(pts) < 2:
            continue
        comp = _orient(np.array(pts), closed, axis)
        res = np.abs(definition_residual(spec, comp[:, 0], comp[:, 1]))
        components.extend(_split(comp, res < tolerance, axis))
    components.sort(key=lambda c: (c[:, axis].min(), c[0, 1 - axis]))
    residuals = [np.abs(definition_residual(spec, c[:, 0], c[:, 1])) for c in components]
    return LocusPolyline(spec, components, residuals, station.axis)


def _split(comp: np.ndarray, good: np.ndarray, axis: int) -> list[np.ndarray]:
    """Runs of at least two consecutive accepted points."""
    if good.all():
        return [comp]
    out = []
    edges = np.flatnonzero(np.diff(np.concatenate(([0], good.astype(int), [0]))))
    for a, b in zip(edges[::2], edges[1::2]):
        if b - a >= 2:
            out.append(_orient(comp[a:b], False, axis))
    return out
