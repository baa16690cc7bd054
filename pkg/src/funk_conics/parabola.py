"""Funk parabolas with a horizontal directrix ``y = y0`` and focus ``(f0, g0)``.

Types 1 and 2 are second-degree curves in ``x`` and ``ybar = 1 +- y``;
types 3 and 4 are quartics, written branch by branch because their
equations depend on which side of the directrix the point lies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, _distance_unchecked, funk_distance_array
from .lines import Direction, line_distance_array
from .quartic import real_roots

DEGENERATE_TOL = 1e-12
CLASSIFY_TOL = 1e-14
ORIGIN_TOL = 1e-12


class ParabolaType(enum.IntEnum):
    TYPE1 = 1  # d(F, P) = d(s, P)
    TYPE2 = 2  # d(P, F) = d(P, s)
    TYPE3 = 3  # d(F, P) = d(P, s)
    TYPE4 = 4  # d(s, P) = d(P, F)


class Branch(enum.Enum):
    BELOW = "below"  # y < y0
    ABOVE = "above"  # y > y0

    @property
    def sign(self) -> int:
        """``sgn(y0 - y)`` on this branch."""
        return 1 if self is Branch.BELOW else -1


class ConicKind(enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


class DegenerateSpecError(ValueError):
    """The focus lies on the directrix; use :func:`degenerate_locus`."""


class ClassificationError(ArithmeticError):
    pass


def _sgn(v: float) -> int:
    return int(v > 0) - int(v < 0)


@dataclass(frozen=True)
class ParabolaSpec:
    f0: float
    g0: float
    y0: float
    kind: ParabolaType = ParabolaType.TYPE1

    def __post_init__(self) -> None:
        for name in ("f0", "g0", "y0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "kind", ParabolaType(self.kind))
        if not math.hypot(self.f0, self.g0) < 1.0:
            raise DomainError(f"focus ({self.f0}, {self.g0}) must lie inside the unit disk")
        if not -1.0 < self.y0 < 1.0:
            raise DomainError(f"directrix y0={self.y0} must lie in (-1, 1)")

    @property
    def focus(self) -> tuple[float, float]:
        return (self.f0, self.g0)

    @property
    def degenerate(self) -> bool:
        return abs(self.g0 - self.y0) < DEGENERATE_TOL

    @property
    def sign(self) -> int:
        """``sgn(y0 - g0)``: +1 when the focus is below the directrix."""
        return 0 if self.degenerate else _sgn(self.y0 - self.g0)

    def with_kind(self, kind) -> "ParabolaSpec":
        return ParabolaSpec(self.f0, self.g0, self.y0, kind)


# --- types 1 and 2 -----------------------------------------------------------


@dataclass(frozen=True)
class ConicCoefficients:
    """``x^2 + B x ybar + C ybar^2 + E ybar = 0`` with ``ybar = 1 + bar_sign*y``."""

    B: float
    C: float
    E: float
    sigma: float
    sign: int
    bar_sign: int

    @property
    def discriminant(self) -> float:
        return self.B * self.B - 4.0 * self.C

    def ybar(self, y):
        return 1.0 + self.bar_sign * y

    def y_from_ybar(self, yb):
        return (yb - 1.0) * self.bar_sign

    def evaluate(self, x, y):
        yb = self.ybar(y)
        return x * x + self.B * x * yb + self.C * yb * yb + self.E * yb

    def gradient(self, x, y) -> tuple[float, float]:
        """Gradient in ``(x, ybar)`` coordinates."""
        yb = self.ybar(y)
        return 2.0 * x + self.B * yb, self.B * x + 2.0 * self.C * yb + self.E


def _require_nondegenerate(spec: ParabolaSpec) -> None:
    if spec.degenerate:
        raise DegenerateSpecError(
            f"focus ({spec.f0}, {spec.g0}) lies on the directrix y={spec.y0}; "
            "the locus is given by degenerate_locus()"
        )


def type1_coefficients(spec: ParabolaSpec) -> ConicCoefficients:
    _require_nondegenerate(spec)
    s = spec.sign
    gap = abs(spec.y0 - spec.g0)
    sigma = 1.0 + s * spec.y0
    return ConicCoefficients(
        B=-2.0 * spec.f0 / sigma,
        C=(spec.f0 ** 2 + gap * gap + 2.0 * gap) / sigma ** 2,
        E=-2.0 * gap / sigma,
        sigma=sigma,
        sign=s,
        bar_sign=s,
    )


def type2_coefficients(spec: ParabolaSpec) -> ConicCoefficients:
    _require_nondegenerate(spec)
    s = spec.sign
    gap = abs(spec.y0 - spec.g0)
    sigma = 1.0 - s * spec.y0
    return ConicCoefficients(
        B=-2.0 * spec.f0 / sigma,
        C=(spec.f0 ** 2 + gap * gap - 2.0 * gap) / sigma ** 2,
        E=2.0 * gap / sigma,
        sigma=sigma,
        sign=s,
        bar_sign=-s,
    )


def conic_coefficients(spec: ParabolaSpec) -> ConicCoefficients:
    if spec.kind is ParabolaType.TYPE1:
        return type1_coefficients(spec)
    if spec.kind is ParabolaType.TYPE2:
        return type2_coefficients(spec)
    raise ValueError(f"type {int(spec.kind)} parabolas are quartics, not conics")


def discriminant_closed_form(spec: ParabolaSpec) -> float:
    """Discriminant ``B^2 - 4C`` written in terms of the focus gap."""
    gap = abs(spec.y0 - spec.g0)
    if spec.kind is ParabolaType.TYPE1:
        sigma = 1.0 + spec.sign * spec.y0
        return -4.0 / sigma ** 2 * (gap * gap + 2.0 * gap)
    sigma = 1.0 - spec.sign * spec.y0
    return 4.0 / sigma ** 2 * gap * (2.0 - gap)


def classify(coeffs: ConicCoefficients) -> ConicKind:
    disc = coeffs.discriminant
    if abs(disc) < CLASSIFY_TOL:
        raise ClassificationError(f"discriminant {disc!r} is numerically zero")
    return ConicKind.ELLIPTIC if disc < 0 else ConicKind.HYPERBOLIC


def excluded_point(spec: ParabolaSpec) -> tuple[float, float]:
    """Point of the type-1 ellipse on the unit circle, ``(0, -sgn(y0 - g0))``."""
    _require_nondegenerate(spec)
    return (0.0, float(-spec.sign))


def origin_membership(spec: ParabolaSpec) -> bool:
    """Whether a type-1 or type-2 locus passes through the origin."""
    _require_nondegenerate(spec)
    return abs(spec.f0 ** 2 + spec.g0 ** 2 - spec.y0 ** 2) < ORIGIN_TOL


# --- canonical ellipse -------------------------------------------------------


@dataclass(frozen=True)
class CanonicalEllipse:
    center: tuple[float, float]
    semi_axes: tuple[float, float]
    axis_direction: tuple[float, float]
    vertices: tuple[tuple[float, float], ...]
    rotation: tuple[float, float] = (1.0, 0.0)  # (alpha, beta)


def canonical_ellipse(spec: ParabolaSpec) -> CanonicalEllipse:
    """Center, semi-axes and vertices of the type-1 ellipse in ``(x, y)``.

    With ``f0 = 0`` there is no cross term and the ellipse is centred on
    the y axis. Otherwise the ``(x, ybar)`` frame is rotated by
    ``(alpha, beta)`` so that the cross term vanishes, and the squares are
    completed in the rotated frame.
    """
    if spec.kind is not ParabolaType.TYPE1:
        raise ValueError("canonical_ellipse applies to type-1 parabolas")
    co = type1_coefficients(spec)
    s = co.sign
    B, C, E = co.B, co.C, co.E
    if spec.f0 == 0.0:
        alpha, beta = 1.0, 0.0
        a_bar, c_bar = 1.0, C
    else:
        rad = math.hypot(B, 1.0 - C)
        h = _sgn(spec.f0) * (1.0 - C)
        # alpha^2 = (rad - h) / 2rad and beta^2 = (rad + h) / 2rad, with the
        # smaller one rewritten through B^2 = rad^2 - h^2
        big = math.sqrt((rad + abs(h)) / (2.0 * rad))
        small = abs(B) / math.sqrt(2.0 * rad * (rad + abs(h)))
        alpha, beta = (small, big) if h >= 0.0 else (big, small)
        a_bar = alpha ** 2 + B * alpha * beta + C * beta ** 2
        c_bar = beta ** 2 - B * alpha * beta + C * alpha ** 2
    d_bar = E * beta
    e_bar = E * alpha
    # a_bar (u + d_bar/2a_bar)^2 + c_bar (v + e_bar/2c_bar)^2 = K
    u0 = -d_bar / (2.0 * a_bar)
    v0 = -e_bar / (2.0 * c_bar)
    K = d_bar ** 2 / (4.0 * a_bar) + e_bar ** 2 / (4.0 * c_bar)
    semi_u = math.sqrt(K / a_bar)
    semi_v = math.sqrt(K / c_bar)
    cx = alpha * u0 - beta * v0
    cyb = beta * u0 + alpha * v0
    center = (cx, co.y_from_ybar(cyb))
    # in (x, y) the ybar component of each direction picks up the factor s
    du = (alpha, s * beta)
    dv = (-beta, s * alpha)
    vertices = (
        (center[0] + semi_u * du[0], center[1] + semi_u * du[1]),
        (center[0] - semi_u * du[0], center[1] - semi_u * du[1]),
        (center[0] + semi_v * dv[0], center[1] + semi_v * dv[1]),
        (center[0] - semi_v * dv[0], center[1] - semi_v * dv[1]),
    )
    return CanonicalEllipse(center, (semi_u, semi_v), du, vertices, (alpha, beta))


def ellipse_center_closed_form(spec: ParabolaSpec) -> tuple[float, float]:
    """Center of the ``f0 = 0`` ellipse: ``(0, (g0 - s) / (2 + |y0 - g0|))``."""
    s = spec.sign
    return (0.0, (spec.g0 - s) / (2.0 + abs(spec.y0 - spec.g0)))


# --- types 3 and 4 -----------------------------------------------------------


@dataclass(frozen=True)
class QuarticCoefficients:
    """``ybar^4 + x^2 ybar^2 - 2 ybar^3 + A ybar^2 + B x ybar + C ybar + D = 0``.

    Valid on one side of the directrix; ``ybar = 1 + bar_sign*y``.
    """

    A: float
    B: float
    C: float
    D: float
    sigma: float
    branch: Branch
    bar_sign: int

    def ybar(self, y):
        return 1.0 + self.bar_sign * y

    def y_from_ybar(self, yb):
        return (yb - 1.0) * self.bar_sign

    def evaluate(self, x, y):
        yb = self.ybar(y)
        return (
            yb ** 4 + x * x * yb * yb - 2.0 * yb ** 3
            + self.A * yb * yb + self.B * x * yb + self.C * yb + self.D
        )

    def ybar_roots(self, x: float, imag_tol: float = 1e-10) -> list[float]:
        """Real roots in ``ybar`` of the equation restricted to abscissa ``x``."""
        return real_roots(-2.0, x * x + self.A, self.B * x + self.C, self.D, imag_tol)

    def as_tuple(self) -> tuple:
        return (self.A, self.B, self.C, self.D, self.sigma, self.bar_sign)

    def monomials(self) -> dict[tuple[int, int], float]:
        """Coefficients keyed by ``(power of x, power of ybar)``."""
        return {
            (0, 4): 1.0, (2, 2): 1.0, (0, 3): -2.0, (0, 2): self.A,
            (1, 1): self.B, (0, 1): self.C, (0, 0): self.D,
        }


def type34_coefficients(spec: ParabolaSpec, branch: Branch) -> QuarticCoefficients:
    branch = Branch(branch)
    s = branch.sign
    f0, g0, y0 = spec.f0, spec.g0, spec.y0
    if spec.kind is ParabolaType.TYPE3:
        sigma = 1.0 - s * y0
        return QuarticCoefficients(
            A=2.0 * sigma * g0 * s,
            B=-2.0 * sigma * f0,
            C=2.0 * sigma * (1.0 - s * g0),
            D=sigma ** 2 * (f0 * f0 + g0 * g0 - 1.0),
            sigma=sigma, branch=branch, bar_sign=-s,
        )
    if spec.kind is ParabolaType.TYPE4:
        sigma = 1.0 + s * y0
        return QuarticCoefficients(
            A=-2.0 * sigma * g0 * s,
            B=-2.0 * sigma * f0,
            C=2.0 * sigma * (1.0 + s * g0),
            D=sigma ** 2 * (f0 * f0 + g0 * g0 - 1.0),
            sigma=sigma, branch=branch, bar_sign=s,
        )
    raise ValueError(f"type {int(spec.kind)} parabolas are conics, not quartics")


@dataclass
class IrreducibilityReport:
    verdict: str  # "irreducible" or "inconclusive"
    C: float
    D: float
    quadratic_factors: str
    linear_factor_cases: dict[str, str] = field(default_factory=dict)

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible"


_STRUCTURE = {(0, 4): 1.0, (2, 2): 1.0, (0, 3): -2.0}
_ABSENT = [(4, 0), (3, 1), (1, 3), (3, 0), (2, 1), (1, 2), (2, 0), (1, 0)]


def check_irreducible(coeffs, tol: float = 1e-14) -> IrreducibilityReport:
    """Replay the factorisation case analysis for a type-3/4 quartic.

    ``coeffs`` is a :class:`QuarticCoefficients` or a monomial map keyed by
    ``(power of x, power of ybar)``. Two quadratic factors force ``C = 0``.
    A cubic times a linear factor ``ybar + Q x + R`` splits on the
    vanishing of ``I`` (the ``x^3`` coefficient of the cubic) and ``Q``:
    ``I = Q = 0`` forces ``D = 0``; ``I = 0 != Q`` needs real ``Q, G`` with
    ``Q + G = 0`` and ``QG = 1``; ``I != 0 = Q`` forces ``I = 0``.
    """
    mono = coeffs.monomials() if isinstance(coeffs, QuarticCoefficients) else dict(coeffs)
    c_val = float(mono.get((0, 1), 0.0))
    d_val = float(mono.get((0, 0), 0.0))
    structural = all(abs(mono.get(k, 0.0) - v) <= tol for k, v in _STRUCTURE.items()) and all(
        abs(mono.get(k, 0.0)) <= tol for k in _ABSENT
    )
    if not structural:
        return IrreducibilityReport(
            "inconclusive", c_val, d_val, "not of the form ybar^4 + x^2 ybar^2 - 2 ybar^3 + ..."
        )
    cases = {}
    # Case 1: G = K = 0, H = 1, L = -R, then L R = 0 gives R = 0 and P R = D.
    cases["I=Q=0"] = (
        f"inconsistent: requires D = 0 but D = {d_val:.6g}" if abs(d_val) > tol
        else "consistent: D = 0"
    )
    # Case 2: Q^2 = -1 has no real solution.
    cases["I=0,Q!=0"] = "inconsistent: Q + G = 0 and QG = 1 give Q^2 = -1"
    # Case 3: HQ + I = 0 with Q = 0 gives I = 0.
    cases["I!=0,Q=0"] = "inconsistent: HQ + I = 0 forces I = 0"
    if abs(c_val) <= tol:
        quad = "consistent: C = 0"
    else:
        quad = f"inconsistent: requires C = 0 but C = {c_val:.6g}"
    ok = quad.startswith("inconsistent") and all(v.startswith("inconsistent") for v in cases.values())
    return IrreducibilityReport("irreducible" if ok else "inconclusive", c_val, d_val, quad, cases)


# --- degenerate loci ---------------------------------------------------------


@dataclass(frozen=True)
class DegenerateLocus:
    """Line segments, each given by two endpoints (circle endpoints excluded)."""

    segments: tuple[tuple[tuple[float, float], tuple[float, float]], ...]


def _ray_exit(p, u) -> tuple[float, float]:
    # t > 0 with |p + t u| = 1
    a = u[0] ** 2 + u[1] ** 2
    b = p[0] * u[0] + p[1] * u[1]
    c = p[0] ** 2 + p[1] ** 2 - 1.0
    t = (-b + math.sqrt(b * b - a * c)) / a
    return (p[0] + t * u[0], p[1] + t * u[1])


def degenerate_locus(spec: ParabolaSpec) -> DegenerateLocus:
    """Locus of a type-1 or type-2 parabola whose focus lies on the directrix.

    Type 1: on ``y >= y0`` the line through the focus and ``(0, 1)``, on
    ``y < y0`` the line through the focus and ``(0, -1)``. Type 2 uses the
    same two lines with the sides exchanged.
    """
    if not spec.degenerate:
        raise ValueError("degenerate_locus requires the focus on the directrix")
    if spec.kind not in (ParabolaType.TYPE1, ParabolaType.TYPE2):
        raise ValueError("types 3 and 4 have no separate degenerate form")
    F = (spec.f0, spec.y0)
    if spec.f0 == 0.0:
        return DegenerateLocus((((0.0, -1.0), (0.0, 1.0)),))
    if spec.kind is ParabolaType.TYPE1:
        return DegenerateLocus((((0.0, -1.0), F), (F, (0.0, 1.0))))
    lower = _ray_exit(F, (spec.f0, spec.y0 - 1.0))  # away from (0, 1)
    upper = _ray_exit(F, (spec.f0, spec.y0 + 1.0))  # away from (0, -1)
    return DegenerateLocus(((lower, F), (F, upper)))


def degenerate_x(spec: ParabolaSpec, y):
    """Abscissa of the degenerate locus at ordinate ``y``."""
    f0, y0 = spec.f0, spec.y0
    y = np.asarray(y, dtype=float)
    above = y >= y0
    if spec.kind is ParabolaType.TYPE1:
        return np.where(above, f0 * (1.0 - y) / (1.0 - y0), f0 * (1.0 + y) / (1.0 + y0))
    return np.where(above, f0 * (1.0 + y) / (1.0 + y0), f0 * (1.0 - y) / (1.0 - y0))


# --- defining property via closed forms --------------------------------------


def definition_residual(spec: ParabolaSpec, x, y) -> np.ndarray:
    """Signed ``lhs - rhs`` of the defining equality, from closed forms."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    f0, g0, y0 = spec.f0, spec.g0, spec.y0
    kind = spec.kind
    if kind in (ParabolaType.TYPE1, ParabolaType.TYPE3):
        d_focus = funk_distance_array(f0, g0, x, y)
    else:
        d_focus = funk_distance_array(x, y, f0, g0)
    if kind in (ParabolaType.TYPE1, ParabolaType.TYPE4):
        d_line, _ = line_distance_array(x, y, y0, Direction.LINE_TO_POINT)
    else:
        d_line, _ = line_distance_array(x, y, y0, Direction.POINT_TO_LINE)
    if kind is ParabolaType.TYPE4:
        return d_line - d_focus
    return d_focus - d_line


def definition_residual_scalar(spec: ParabolaSpec, x: float, y: float) -> float:
    """Scalar version of :func:`definition_residual` for root finders."""
    f0, g0, y0 = spec.f0, spec.g0, spec.y0
    kind = spec.kind
    if kind in (ParabolaType.TYPE1, ParabolaType.TYPE3):
        d_focus = _distance_unchecked(f0, g0, x, y)
    else:
        d_focus = _distance_unchecked(x, y, f0, g0)
    if kind in (ParabolaType.TYPE2, ParabolaType.TYPE3):
        sg = _sgn(y - y0)
        d_line = math.log((1.0 + sg * y) / (1.0 + sg * y0))
    else:
        sg = _sgn(y0 - y)
        r = (1.0 + sg * y0) / (1.0 + sg * y)
        w = math.sqrt((1.0 - y0) * (1.0 + y0))
        if abs(x * r) < w:
            d_line = math.log(r)
        else:
            ex = math.copysign(w, x)
            d_line = math.log1p(((x - ex) ** 2 + (y - y0) ** 2) / (1.0 - x * x - y * y))
    if kind is ParabolaType.TYPE4:
        return d_line - d_focus
    return d_focus - d_line


def paper_form_valid(spec: ParabolaSpec, x, y) -> np.ndarray:
    """Where the algebraic equations describe the locus.

    Types 1 and 4 use the line-to-point distance, whose logarithmic closed
    form needs its witness on the chord; elsewhere the algebraic curve and
    the true locus part ways.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if spec.kind in (ParabolaType.TYPE1, ParabolaType.TYPE4):
        return line_distance_array(x, y, spec.y0, Direction.LINE_TO_POINT)[1]
    return np.ones(np.broadcast(x, y).shape, dtype=bool)
