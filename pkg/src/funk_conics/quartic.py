"""Closed-form cubic and quartic root finding with Newton polishing."""

from __future__ import annotations

import cmath
import math

_OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)


def _polish(coeffs, z: complex, steps: int = 60) -> complex:
    # coeffs are highest degree first
    for _ in range(steps):
        p = 0j
        dp = 0j
        for c in coeffs:
            dp = dp * z + p
            p = p * z + c
        if dp == 0:
            break
        step = p / dp
        z_new = z - step
        if not (abs(z_new) < 1e300):
            break
        if abs(step) <= 1e-17 * max(1.0, abs(z)):
            z = z_new
            break
        z = z_new
    return z


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    if z.imag == 0.0:
        return complex(math.copysign(abs(z.real) ** (1.0 / 3.0), z.real))
    return cmath.exp(cmath.log(z) / 3.0)


def _root_scale(*coeffs: float) -> float:
    # Cauchy-like bound: coefficient k (of degree n - k) scales as S^k
    return max(abs(c) ** (1.0 / k) for k, c in enumerate(coeffs, start=1))


def _scaled(coeffs, S: float) -> list[float]:
    out = []
    for k, c in enumerate(coeffs, start=1):
        for _ in range(k):
            c = c / S
        out.append(c)
    return out


def solve_cubic(a: float, b: float, c: float) -> list[complex]:
    """Roots of ``t^3 + a t^2 + b t + c`` (Cardano), polished."""
    S = _root_scale(a, b, c)
    if S == 0.0:
        return [0j, 0j, 0j]
    if not 1e-100 < S < 1e100:
        return [S * z for z in solve_cubic(*_scaled((a, b, c), S))]
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    disc = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    # pick the larger of -q/2 +- disc to avoid cancellation
    w = -q / 2.0 + disc if abs(-q / 2.0 + disc) >= abs(-q / 2.0 - disc) else -q / 2.0 - disc
    u = _cbrt(w)
    roots = []
    for k in range(3):
        uk = u * _OMEGA ** k
        t = 0j if uk == 0 else uk - p / (3.0 * uk)
        roots.append(t - shift)
    # keep the largest root and deflate with Vieta's relations, which stay
    # accurate for the small roots that Cardano's formula smears
    r1 = _polish((1.0, a, b, c), max(roots, key=abs))
    if abs(r1.imag) <= 1e-12 * abs(r1):
        r1 = complex(r1.real)
    if r1 == 0:
        return [0j, 0j, 0j]
    prod = -c / r1
    total = (b - prod) / r1
    r2, r3 = _solve_quadratic(-total, prod)
    return [r1] + [_polish((1.0, a, b, c), r) for r in (r2, r3)]


def _solve_quadratic(b: complex, c: complex) -> tuple[complex, complex]:
    disc = cmath.sqrt(b * b - 4.0 * c)
    q = -0.5 * (b + disc) if (b.conjugate() * disc).real >= 0 else -0.5 * (b - disc)
    if q == 0:
        return 0j, 0j
    return q, c / q


def solve_quartic(a3: float, a2: float, a1: float, a0: float) -> list[complex]:
    """All four roots of ``z^4 + a3 z^3 + a2 z^2 + a1 z + a0`` (Ferrari).

    The depressed quartic ``t^4 + p t^2 + q t + r`` is split into two
    quadratics through a root ``m`` of the resolvent cubic
    ``8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2``; every root is then polished by
    Newton's method on the original polynomial. Coefficients of extreme
    magnitude are rescaled first.
    """
    S = _root_scale(a3, a2, a1, a0)
    if S == 0.0:
        return [0j] * 4
    if not 1e-100 < S < 1e100:
        return [S * z for z in solve_quartic(*_scaled((a3, a2, a1, a0), S))]
    shift = a3 / 4.0
    p = a2 - 3.0 * a3 * a3 / 8.0
    q = a1 - a3 * a2 / 2.0 + a3 ** 3 / 8.0
    r = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 ** 4 / 256.0
    scale = max(abs(p), abs(q), abs(r), 1e-300)
    if abs(q) <= 1e-14 * scale:
        # biquadratic
        u1, u2 = _solve_quadratic(complex(p), complex(r))
        ts = [cmath.sqrt(u1), -cmath.sqrt(u1), cmath.sqrt(u2), -cmath.sqrt(u2)]
    else:
        ms = solve_cubic(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0)
        m = max(ms, key=abs)
        s = cmath.sqrt(2.0 * m)
        ts = []
        for sign in (1.0, -1.0):
            # t^2 - sign*s*t + (p/2 + m + sign*q/(2s)) = 0
            t1, t2 = _solve_quadratic(-sign * s, p / 2.0 + m + sign * q / (2.0 * s))
            ts.extend((t1, t2))
    coeffs = (1.0, a3, a2, a1, a0)
    return [_polish(coeffs, t - shift) for t in ts]


def real_roots(a3: float, a2: float, a1: float, a0: float, imag_tol: float = 1e-10) -> list[float]:
    """Sorted real roots of the monic quartic, dropping complex pairs."""
    out = [z.real for z in solve_quartic(a3, a2, a1, a0) if abs(z.imag) < imag_tol]
    return sorted(out)


def eval_quartic(a3: float, a2: float, a1: float, a0: float, z: float) -> float:
    return (((z + a3) * z + a2) * z + a1) * z + a0
