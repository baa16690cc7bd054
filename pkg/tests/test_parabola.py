import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.optimize import brentq

from funk_conics.core import DomainError, distance
from funk_conics.lines import line_to_point, point_to_line
from funk_conics.parabola import (
    Branch,
    ClassificationError,
    ConicKind,
    DegenerateSpecError,
    ParabolaSpec,
    ParabolaType,
    canonical_ellipse,
    check_irreducible,
    classify,
    conic_coefficients,
    definition_residual,
    degenerate_locus,
    degenerate_x,
    discriminant_closed_form,
    ellipse_center_closed_form,
    excluded_point,
    origin_membership,
    paper_form_valid,
    type1_coefficients,
    type2_coefficients,
    type34_coefficients,
)

from oracles import library_coeffs, locus_polynomial, normalised_coeffs, same_coeffs


@st.composite
def specs(draw, kind=1, min_gap=1e-3):
    r = draw(st.floats(0.0, 0.95))
    a = draw(st.floats(0.0, 2.0 * math.pi))
    f0, g0 = r * math.cos(a), r * math.sin(a)
    y0 = draw(st.floats(-0.95, 0.95))
    assume(abs(g0 - y0) > min_gap)
    return ParabolaSpec(f0, g0, y0, kind)


# --- spec ---------------------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(DomainError):
        ParabolaSpec(0.9, 0.9, 0.0)
    with pytest.raises(DomainError):
        ParabolaSpec(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        ParabolaSpec(0.0, 0.0, 0.0, 5)


def test_spec_sign_and_degenerate():
    assert ParabolaSpec(0.3, -0.4, 0.5).sign == 1
    assert ParabolaSpec(0.3, 0.4, -0.5).sign == -1
    spec = ParabolaSpec(0.3, 0.5, 0.5)
    assert spec.degenerate and spec.sign == 0


# --- types 1 and 2 --------------------------------------------------------------


def test_type1_figure1_coefficients():
    co = type1_coefficients(ParabolaSpec(0.3, -0.4, 0.5, 1))
    assert (co.B, co.C, co.E, co.sigma) == pytest.approx((-0.4, 1.2, -1.2, 1.5), rel=1e-15)
    assert co.C == pytest.approx(-co.E, rel=1e-15)


def test_type2_figure3_coefficients():
    co = type2_coefficients(ParabolaSpec(0.3, -0.4, 0.5, 2))
    assert (co.B, co.C, co.E, co.sigma) == pytest.approx((-1.2, -3.6, 3.6, 0.5), rel=1e-15)


def test_figure2_mirror_of_figure1():
    # reflecting y -> -y maps Figure 1 to Figure 2 and ybar = 1 + s y onto itself
    c1 = type1_coefficients(ParabolaSpec(0.3, -0.4, 0.5, 1))
    c2 = type1_coefficients(ParabolaSpec(0.3, 0.4, -0.5, 1))
    assert (c1.B, c1.C, c1.E, c1.sigma) == pytest.approx((c2.B, c2.C, c2.E, c2.sigma))
    assert c1.bar_sign == -c2.bar_sign


@pytest.mark.parametrize("kind", [1, 2])
@pytest.mark.parametrize("params", [(0.3, -0.4, 0.5), (0.3, 0.4, -0.5), (-0.2, 0.1, 0.6), (0.45, 0.35, -0.1)])
def test_conic_matches_symbolic_derivation(kind, params):
    spec = ParabolaSpec(*params, kind)
    co = conic_coefficients(spec)
    side = spec.sign  # the locus lies on the focus side
    ref = normalised_coeffs(locus_polynomial(kind, *params, side), (2, 0))
    ours = library_coeffs(lambda x, y: co.evaluate(x, y), (2, 0))
    assert same_coeffs(ours, ref, 1e-12)


@pytest.mark.parametrize("kind", [3, 4])
@pytest.mark.parametrize("params", [(0.0, 0.0, 0.3), (0.6, 0.0, 0.3), (0.7, 0.3, 0.3), (0.0, -0.4, -0.8), (-0.25, 0.5, 0.1)])
def test_quartic_matches_symbolic_derivation(kind, params):
    spec = ParabolaSpec(*params, kind)
    for branch in Branch:
        co = type34_coefficients(spec, branch)
        ref = normalised_coeffs(locus_polynomial(kind, *params, branch.sign), (0, 4))
        ours = library_coeffs(lambda x, y: co.evaluate(x, y), (0, 4))
        assert same_coeffs(ours, ref, 1e-12), branch


@settings(max_examples=40, deadline=None)
@given(specs(kind=1) | specs(kind=2))
def test_conic_vanishes_where_the_definition_holds(spec):
    # solve the defining equality along horizontal lines with the plain
    # distance functions and evaluate the conic there
    co = conic_coefficients(spec)
    lo, hi = (-0.95, spec.y0) if spec.sign > 0 else (spec.y0, 0.95)
    for y in np.linspace(lo, hi, 9)[1:-1]:
        w = math.sqrt(0.999 ** 2 - y * y)
        xs = np.linspace(-w, w, 200)
        g = [_defining_gap(spec, x, y) for x in xs]
        for i in range(len(xs) - 1):
            if g[i] * g[i + 1] < 0:
                x = brentq(lambda t: _defining_gap(spec, t, y), xs[i], xs[i + 1], xtol=1e-15)
                if paper_form_valid(spec, x, y):
                    scale = 1.0 + abs(co.B) + abs(co.C) + abs(co.E)
                    assert abs(co.evaluate(x, y)) < 1e-9 * scale


def _defining_gap(spec, x, y):
    F = spec.focus
    P = (x, y)
    if spec.kind == 1:
        return distance(F, P) - line_to_point(spec.y0, P).distance
    if spec.kind == 2:
        return distance(P, F) - point_to_line(P, spec.y0).distance
    if spec.kind == 3:
        return distance(F, P) - point_to_line(P, spec.y0).distance
    return line_to_point(spec.y0, P).distance - distance(P, F)


@settings(max_examples=300, deadline=None)
@given(specs(kind=1))
def test_type1_elliptic(spec):
    co = type1_coefficients(spec)
    assert co.discriminant < 0
    assert co.discriminant == pytest.approx(discriminant_closed_form(spec), abs=1e-12)
    assert classify(co) is ConicKind.ELLIPTIC


@settings(max_examples=300, deadline=None)
@given(specs(kind=2))
def test_type2_hyperbolic(spec):
    co = type2_coefficients(spec)
    assert co.discriminant > 0
    assert co.discriminant == pytest.approx(discriminant_closed_form(spec), abs=1e-12)
    assert classify(co) is ConicKind.HYPERBOLIC


def test_type2_discriminant_carries_sigma_factor():
    spec = ParabolaSpec(0.3, -0.4, 0.5, 2)
    gap = 0.9
    bare = 4 * gap * (2 - gap)
    assert type2_coefficients(spec).discriminant == pytest.approx(bare / 0.5 ** 2)


def test_classify_rejects_parabolic():
    from funk_conics.parabola import ConicCoefficients

    with pytest.raises(ClassificationError):
        classify(ConicCoefficients(B=2.0, C=1.0, E=1.0, sigma=1.0, sign=1, bar_sign=1))


def test_conic_rejects_quartic_types():
    with pytest.raises(ValueError):
        conic_coefficients(ParabolaSpec(0, 0, 0.3, 3))
    with pytest.raises(ValueError):
        type34_coefficients(ParabolaSpec(0, 0, 0.3, 1), Branch.BELOW)


@settings(max_examples=200, deadline=None)
@given(specs(kind=1))
def test_excluded_point_on_the_ellipse(spec):
    co = type1_coefficients(spec)
    x, y = excluded_point(spec)
    assert (x, y) == (0.0, -float(spec.sign))
    assert abs(co.evaluate(x, y)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 0.9), st.floats(0.0, 2.0 * math.pi), st.sampled_from([1, -1]), st.sampled_from([1, 2]))
def test_origin_membership(rad, angle, sgn, kind):
    f0, g0 = rad * math.cos(angle), rad * math.sin(angle)
    y0 = sgn * rad
    assume(abs(g0 - y0) > 1e-3)
    spec = ParabolaSpec(f0, g0, y0, kind)
    assert origin_membership(spec)
    co = conic_coefficients(spec)
    assert co.C == pytest.approx(-co.E, abs=1e-12)
    assert abs(definition_residual(spec, 0.0, 0.0)) < 1e-12


def test_origin_not_member():
    spec = ParabolaSpec(0.3, -0.4, 0.6, 1)
    assert not origin_membership(spec)
    assert abs(definition_residual(spec, 0.0, 0.0)) > 1e-3


# --- canonical ellipse -------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(specs(kind=1))
def test_canonical_vertices_on_the_ellipse(spec):
    co = type1_coefficients(spec)
    el = canonical_ellipse(spec)
    for v in el.vertices:
        assert abs(co.evaluate(*v)) < 1e-10


@settings(max_examples=200, deadline=None)
@given(specs(kind=1))
def test_canonical_axes_orthogonal_and_symmetric(spec):
    el = canonical_ellipse(spec)
    v = np.array(el.vertices)
    c = np.array(el.center)
    assert np.allclose((v[0] + v[1]) / 2, c, atol=1e-12)
    assert np.allclose((v[2] + v[3]) / 2, c, atol=1e-12)
    assert abs(np.dot(v[0] - v[1], v[2] - v[3])) < 1e-12


@settings(max_examples=200, deadline=None)
@given(specs(kind=1))
def test_center_is_the_gradient_zero(spec):
    co = type1_coefficients(spec)
    gx, gy = co.gradient(*canonical_ellipse(spec).center)
    assert abs(gx) < 1e-12 and abs(gy) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95))
def test_center_on_axis(g0, y0):
    assume(abs(g0 - y0) > 1e-3)
    spec = ParabolaSpec(0.0, g0, y0, 1)
    got = canonical_ellipse(spec).center
    assert got == pytest.approx(ellipse_center_closed_form(spec), abs=1e-12)


def test_center_example():
    spec = ParabolaSpec(0.0, -0.4, 0.5, 1)
    assert canonical_ellipse(spec).center[1] == pytest.approx(-14 / 29, abs=1e-15)


def test_canonical_requires_type1():
    with pytest.raises(ValueError):
        canonical_ellipse(ParabolaSpec(0.3, -0.4, 0.5, 2))


# --- types 3 and 4 ------------------------------------------------------------------


def test_type3_figure5_coefficients():
    co = type34_coefficients(ParabolaSpec(0.0, 0.0, 0.3, 3), Branch.BELOW)
    assert (co.A, co.B, co.C, co.D, co.sigma) == pytest.approx((0.0, 0.0, 1.4, -0.49, 0.7), abs=1e-15)


def test_type3_closed_form_point():
    # on x = 0 the below branch reduces to (ybar^2 - 0.7)(ybar^2 - 2 ybar + 0.7) = 0
    spec = ParabolaSpec(0.0, 0.0, 0.3, 3)
    co = type34_coefficients(spec, Branch.BELOW)
    y = 1.0 - math.sqrt(0.7)
    assert abs(co.evaluate(0.0, y)) < 1e-15
    assert abs(definition_residual(spec, 0.0, y)) < 1e-15


@settings(max_examples=300, deadline=None)
@given(specs(kind=3, min_gap=0.0), st.sampled_from(list(Branch)))
def test_cross_branch_coefficients_coincide(spec, branch):
    other = Branch.ABOVE if branch is Branch.BELOW else Branch.BELOW
    c3 = type34_coefficients(spec, branch).as_tuple()
    c4 = type34_coefficients(spec.with_kind(4), other).as_tuple()
    assert c3 == pytest.approx(c4, rel=1e-15, abs=0)


def test_type3_and_type4_loci_differ():
    # the coefficient tuples coincide across branches, but each curve is
    # only kept on its own side, so the two loci are different sets
    spec = ParabolaSpec(0.0, 0.0, 0.3, 3)
    y = 1.0 - math.sqrt(0.7)
    assert abs(definition_residual(spec, 0.0, y)) < 1e-12
    assert abs(definition_residual(spec.with_kind(4), 0.0, y)) > 1e-3


@settings(max_examples=300, deadline=None)
@given(specs(kind=3) | specs(kind=4), st.sampled_from(list(Branch)))
def test_irreducible(spec, branch):
    co = type34_coefficients(spec, branch)
    rep = check_irreducible(co)
    assert rep.irreducible
    s = branch.sign
    sign_g = -s if spec.kind == 3 else s
    assert rep.C == pytest.approx(2 * co.sigma * (1 + sign_g * spec.g0))
    assert rep.C > 0
    assert rep.quadratic_factors.startswith("inconsistent")
    assert len(rep.linear_factor_cases) == 3
    assert all(v.startswith("inconsistent") for v in rep.linear_factor_cases.values())


def test_irreducibility_detects_reducible_input():
    # ybar^4 + x^2 ybar^2 - 2 ybar^3 + ybar^2 = ybar^2 ((ybar - 1)^2 + x^2)
    mono = {(0, 4): 1.0, (2, 2): 1.0, (0, 3): -2.0, (0, 2): 1.0}
    rep = check_irreducible(mono)
    assert not rep.irreducible
    assert rep.quadratic_factors.startswith("consistent")
    assert rep.linear_factor_cases["I=Q=0"].startswith("consistent")


def test_irreducibility_inconclusive_for_other_shapes():
    assert check_irreducible({(4, 0): 1.0, (0, 0): -1.0}).verdict == "inconclusive"


# --- degenerate ------------------------------------------------------------------


def test_degenerate_rejected_by_coefficients():
    with pytest.raises(DegenerateSpecError):
        type1_coefficients(ParabolaSpec(0.3, 0.5, 0.5, 1))


def test_degenerate_diameter():
    loc = degenerate_locus(ParabolaSpec(0.0, 0.2, 0.2, 1))
    assert loc.segments == (((0.0, -1.0), (0.0, 1.0)),)


@pytest.mark.parametrize("kind", [1, 2])
@pytest.mark.parametrize("params", [(0.3, 0.5), (-0.4, -0.2), (0.6, 0.0)])
def test_degenerate_segments_solve_the_definition(kind, params):
    f0, y0 = params
    spec = ParabolaSpec(f0, y0, y0, kind)
    for y in np.linspace(-0.95, 0.95, 41):
        x = float(degenerate_x(spec, y))
        if math.hypot(x, y) < 0.999:
            assert abs(definition_residual(spec, x, y)) < 1e-12


@pytest.mark.parametrize("params", [(0.3, 0.5), (-0.4, -0.2)])
def test_degenerate_type2_uses_the_type1_lines_with_sides_exchanged(params):
    f0, y0 = params
    s1 = ParabolaSpec(f0, y0, y0, 1)
    s2 = ParabolaSpec(f0, y0, y0, 2)
    # above the directrix type 2 follows the line that type 1 uses below it
    y = y0 + 0.5 * (1 - y0)
    x2 = float(degenerate_x(s2, y))
    below = lambda t: f0 * (1.0 + t) / (1.0 + y0)
    assert x2 == pytest.approx(below(y))
    for (a, b) in degenerate_locus(s2).segments:
        for p in (a, b):
            assert math.hypot(*p) <= 1.0 + 1e-12
    assert float(degenerate_x(s1, y)) != pytest.approx(x2)
