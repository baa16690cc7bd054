"""NumPy implementation of the brute-force kernels.

Mirrors ``_ckernels.pyx`` operation for operation so that both backends
return the same numbers up to rounding.
"""

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0
GOLDEN_TOL = 1e-12
_CHUNK_ELEMS = 1 << 22


def _dist(px, py, qx, qy):
    d1 = qx - px
    d2 = qy - py
    dd = d1 * d1 + d2 * d2
    cross = px * d2 - py * d1
    sk = np.sqrt(np.maximum(dd - cross * cross, 0.0))
    w = qx * d1 + qy * d2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(w > 0.0, (1.0 - qx * qx - qy * qy) / (sk + w), (sk - w) / dd)
        out = np.where(s > 0.0, np.log1p(1.0 / s), np.inf)
    return np.where(dd < 1e-30, 0.0, out)


def funk_distance_batch(px, py, qx, qy):
    px, py, qx, qy = (np.ascontiguousarray(a, dtype=np.float64) for a in (px, py, qx, qy))
    return _dist(px, py, qx, qy)


def golden_iterations(width):
    if width <= GOLDEN_TOL:
        return 0
    return int(math.ceil(math.log(GOLDEN_TOL / width) / math.log(INV_PHI)))


def chord_minimum(px, py, y0, to_line, samples):
    """Minimise the Funk distance between each point and the chord ``y = y0``.

    ``to_line`` selects ``d(P, Q)`` (point to line) over ``d(Q, P)``. The
    chord is sampled at ``samples`` equally spaced points including its two
    endpoints on the circle, where the distance formula is evaluated by
    continuity (infinite towards the circle, finite away from it), then the
    best sample is refined by golden-section search. Returns
    ``(distance, argmin_x)``.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    n = px.shape[0]
    dist = np.empty(n)
    argx = np.empty(n)
    w = math.sqrt((1.0 - y0) * (1.0 + y0))
    h = 2.0 * w / (samples - 1)
    grid = np.linspace(-w, w, samples)
    n_it = golden_iterations(2.0 * h)
    chunk = max(1, _CHUNK_ELEMS // samples)

    def f(a, b, x):
        if to_line:
            return _dist(a, b, x, y0)
        return _dist(x, y0, a, b)

    for start in range(0, n, chunk):
        a = px[start:start + chunk]
        b = py[start:start + chunk]
        vals = f(a[:, None], b[:, None], grid[None, :])
        i = np.argmin(vals, axis=1)
        best = vals[np.arange(len(i)), i]
        bx = grid[i]
        lo = grid[np.maximum(i - 1, 0)]
        hi = grid[np.minimum(i + 1, samples - 1)]
        span = hi - lo
        c = lo + INV_PHI2 * span
        d = lo + INV_PHI * span
        fc = f(a, b, c)
        fd = f(a, b, d)
        for _ in range(n_it):
            left = fc < fd
            span = INV_PHI * span
            # left: keep [lo, d]; right: keep [c, hi]
            lo = np.where(left, lo, c)
            new_c = np.where(left, lo + INV_PHI2 * span, d)
            new_d = np.where(left, c, lo + INV_PHI * span)
            xe = np.where(left, new_c, new_d)
            fe = f(a, b, xe)
            fc, fd = np.where(left, fe, fd), np.where(left, fc, fe)
            c, d = new_c, new_d
        better_c = fc < best
        best = np.where(better_c, fc, best)
        bx = np.where(better_c, c, bx)
        better_d = fd < best
        best = np.where(better_d, fd, best)
        bx = np.where(better_d, d, bx)
        dist[start:start + chunk] = best
        argx[start:start + chunk] = bx
    return dist, argx
