# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled brute-force kernels; see ``_pykernels`` for the reference."""

import numpy as np

from libc.math cimport sqrt, log1p, log, ceil, INFINITY

cdef double INV_PHI = (sqrt(5.0) - 1.0) / 2.0
cdef double INV_PHI2 = (3.0 - sqrt(5.0)) / 2.0
cdef double GOLDEN_TOL = 1e-12


cdef inline double _dist(double px, double py, double qx, double qy) noexcept nogil:
    cdef double d1 = qx - px
    cdef double d2 = qy - py
    cdef double dd = d1 * d1 + d2 * d2
    cdef double cross, k, sk, w, s
    if dd < 1e-30:
        return 0.0
    cross = px * d2 - py * d1
    k = dd - cross * cross
    if k < 0.0:
        k = 0.0
    sk = sqrt(k)
    w = qx * d1 + qy * d2
    if w > 0.0:
        s = (1.0 - qx * qx - qy * qy) / (sk + w)
    else:
        s = (sk - w) / dd
    if s <= 0.0:
        return INFINITY
    return log1p(1.0 / s)


cdef inline double _f(double a, double b, double x, double y0, bint to_line) noexcept nogil:
    if to_line:
        return _dist(a, b, x, y0)
    return _dist(x, y0, a, b)


def funk_distance_batch(px, py, qx, qy):
    cdef double[::1] ax = np.ascontiguousarray(px, dtype=np.float64)
    cdef double[::1] ay = np.ascontiguousarray(py, dtype=np.float64)
    cdef double[::1] bx = np.ascontiguousarray(qx, dtype=np.float64)
    cdef double[::1] by = np.ascontiguousarray(qy, dtype=np.float64)
    cdef Py_ssize_t n = ax.shape[0], i
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _dist(ax[i], ay[i], bx[i], by[i])
    return out


def golden_iterations(double width):
    if width <= GOLDEN_TOL:
        return 0
    return int(ceil(log(GOLDEN_TOL / width) / log(INV_PHI)))


def chord_minimum(px, py, double y0, bint to_line, Py_ssize_t samples):
    cdef double[::1] ax = np.ascontiguousarray(px, dtype=np.float64)
    cdef double[::1] ay = np.ascontiguousarray(py, dtype=np.float64)
    cdef Py_ssize_t n = ax.shape[0], p, i, j, ibest
    dist = np.empty(n)
    argx = np.empty(n)
    cdef double[::1] dout = dist
    cdef double[::1] xout = argx
    if samples < 2:
        raise ValueError("samples must be at least 2")
    cdef double w = sqrt((1.0 - y0) * (1.0 + y0))
    cdef double h = 2.0 * w / (samples - 1)
    cdef int n_it = golden_iterations(2.0 * h)
    cdef double a, b, x, v, best, bx, lo, hi, span, c, d, fc, fd
    with nogil:
        for p in range(n):
            a = ax[p]
            b = ay[p]
            best = 1e300
            ibest = 0
            for i in range(samples):
                x = w if i == samples - 1 else -w + i * h
                v = _f(a, b, x, y0, to_line)
                if v < best:
                    best = v
                    ibest = i
            bx = w if ibest == samples - 1 else -w + ibest * h
            lo = -w + (ibest - 1) * h if ibest > 0 else -w
            hi = -w + (ibest + 1) * h if ibest < samples - 2 else w
            span = hi - lo
            c = lo + INV_PHI2 * span
            d = lo + INV_PHI * span
            fc = _f(a, b, c, y0, to_line)
            fd = _f(a, b, d, y0, to_line)
            for j in range(n_it):
                span = INV_PHI * span
                if fc < fd:
                    d = c
                    fd = fc
                    c = lo + INV_PHI2 * span
                    fc = _f(a, b, c, y0, to_line)
                else:
                    lo = c
                    c = d
                    fc = fd
                    d = lo + INV_PHI * span
                    fd = _f(a, b, d, y0, to_line)
            if fc < best:
                best = fc
                bx = c
            if fd < best:
                best = fd
                bx = d
            dout[p] = best
            xout[p] = bx
    return dist, argx
