from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leblab.errors import DegenerateTriangle, PointOutsideD
from leblab.exactnum import QuadVal
from leblab.sampling import (
    _fractions_between,
    geodesic_samples,
    points_abs_minus1_root2,
    points_mid_circle,
)
from leblab.shapespace import (
    HALF,
    QUARTER,
    ZETA,
    ExactComplex,
    Geodesic,
    L_FORMULAS,
    R_FORMULAS,
    Region,
    ShapePoint,
    SideLengths,
    apply_L,
    apply_R,
    classify,
    from_side_lengths,
    hyperbolic_distance,
    in_domain,
    on_genericity_geodesic,
    point_from_y2,
    zeta_radius_invariant,
)

EQUILATERAL = ShapePoint(HALF, HALF, 3)


@pytest.mark.parametrize(
    "z, region",
    [(ZETA, Region.I), (ShapePoint(F(1, 9), F(1, 7)), Region.V), (ShapePoint(F(1, 3), F(2, 3)), Region.I)],
)
def test_classify_examples(z, region):
    assert classify(z) is region


def test_classify_boundary_conventions():
    # Re z = 1/4 belongs to the left regions
    assert classify(ShapePoint(QUARTER, QUARTER)) is Region.V
    assert classify(ShapePoint(QUARTER, F(3, 5))) is Region.II
    # the triple point where all three geodesics meet goes to I
    triple = ShapePoint(QUARTER, F(1, 4), 3)
    assert classify(triple) is Region.I
    assert apply_L(triple) == L_FORMULAS[Region.II](triple) == L_FORMULAS[Region.V](triple)
    assert apply_R(triple) == R_FORMULAS[Region.VI](triple)


def test_outside_domain_rejected():
    with pytest.raises(PointOutsideD):
        ShapePoint(F(3, 5), F(1, 2))
    with pytest.raises(PointOutsideD):
        ShapePoint(F(1, 4), 0)
    with pytest.raises(PointOutsideD):
        ShapePoint(F(1, 10), F(9, 10))


def test_L_examples():
    assert apply_L(ShapePoint(F(1, 8), F(1, 8))) == ShapePoint(QUARTER, QUARTER)
    assert apply_L(ZETA) == ZETA
    assert apply_L(ShapePoint(F(1, 3), F(2, 3))) == ShapePoint(F(3, 10), F(3, 5))


def test_R_examples():
    assert apply_R(ZETA) == ZETA
    # confirmed by planar bisection of the triangle (0,0), (1,0), (1/8,1/8)
    w = apply_R(ShapePoint(F(1, 8), F(1, 8)))
    assert w == ShapePoint(F(11, 25), F(2, 25))
    assert classify(w) is Region.VI
    for z in points_abs_minus1_root2([F(2, 5), F(9, 20), F(3, 10)]):
        assert apply_R(z) == z


def test_R_of_quarter_zeta_by_planar_bisection():
    from leblab.meshsim import bisect, point_shape_key, seed_triangle, shape_key

    z = ShapePoint(F(1, 8), F(1, 8))
    keys = {shape_key(c) for c in bisect(seed_triangle(z))}
    assert point_shape_key(apply_R(z)) in keys
    assert point_shape_key(apply_L(z)) in keys


@pytest.mark.parametrize(
    "z, geo",
    [(ZETA, Geodesic.ABS_ROOT2), (ShapePoint(F(1, 9), F(1, 7)), Geodesic.NONE), (EQUILATERAL, Geodesic.RE_HALF)],
)
def test_genericity_geodesic(z, geo):
    assert on_genericity_geodesic(z) is geo


def test_side_lengths():
    assert from_side_lengths(SideLengths(1, 1, 1)) == EQUILATERAL
    thin = ShapePoint(F(1, 1700), F(1, 1700), 3399)
    assert from_side_lengths(SideLengths(1, 1, F(1, 850))) == thin
    assert from_side_lengths(SideLengths(4, 4, F(4, 850))) == thin
    assert from_side_lengths(SideLengths.from_decimal_sides("3", "4", "5")) == ShapePoint(F(9, 25), F(12, 25))
    with pytest.raises(DegenerateTriangle):
        SideLengths(1, 4, 9)


def test_hyperbolic_distance():
    z = ShapePoint(F(1, 9), F(1, 7))
    assert hyperbolic_distance(z, z) == 0
    assert hyperbolic_distance(ExactComplex(0, 1), ExactComplex(0, 2)) == pytest.approx(math.log(2), abs=1e-12)


def test_zeta_radius_invariant():
    assert zeta_radius_invariant(ZETA) == 0
    assert zeta_radius_invariant(ExactComplex(0, HALF)) == QuadVal(HALF)


def _near(z: ShapePoint, dx: F, dy: F):
    w = ExactComplex(z.x + dx, z.s + dy, z.d)
    return ShapePoint.of(w) if in_domain(w) else None


def _mid(xs):
    return points_mid_circle(xs)


def _abs_half(xs):
    return [point_from_y2(x, QUARTER - x * x) for x in xs]


# (points on a dividing geodesic, the two regions it separates)
BORDERS = [
    ([ShapePoint(QUARTER, y) for y in (F(1, 8), F(1, 5), F(2, 5))], Region.V, Region.VI),
    ([ShapePoint(QUARTER, y) for y in (F(1, 2), F(3, 5), F(13, 20))], Region.II, Region.I),
    (_abs_half(_fractions_between(F(1, 8), QUARTER, 5)), Region.II, Region.III),
    (_abs_half(_fractions_between(QUARTER, HALF, 5)), Region.IV, Region.VI),
    (_mid(_fractions_between(F(0), QUARTER, 5)), Region.III, Region.V),
    (_mid(_fractions_between(QUARTER, HALF, 5)), Region.I, Region.IV),
]


@pytest.mark.parametrize("points, a, b", BORDERS)
def test_maps_continuous_across_boundaries(points, a, b):
    """Formulas of both adjacent regions agree on the geodesic between them."""
    assert points
    for z in points:
        assert L_FORMULAS[a](z) == L_FORMULAS[b](z)
        assert R_FORMULAS[a](z) == R_FORMULAS[b](z)


def test_geodesic_samples_lie_on_their_geodesics():
    s = geodesic_samples()
    assert on_genericity_geodesic(s["abs_root2"]) is Geodesic.ABS_ROOT2
    assert on_genericity_geodesic(s["abs_minus1_root2"]) is Geodesic.ABS_MINUS1_ROOT2
    assert on_genericity_geodesic(s["re_half"]) is Geodesic.RE_HALF


coords = st.fractions(min_value=F(1, 300), max_value=F(1, 2), max_denominator=300)


@settings(max_examples=400, deadline=None)
@given(coords, st.fractions(min_value=F(1, 300), max_value=1, max_denominator=300))
def test_maps_stay_in_domain_and_match_floats(x, y):
    z = ExactComplex(x, y)
    if not in_domain(z):
        return
    z = ShapePoint.of(z)
    for f in (apply_L, apply_R):
        w = f(z)
        assert in_domain(w)
    # metric non-increase on a nearby rational pair
    w = _near(z, F(1, 997), F(1, 991))
    if w is not None:
        d0 = hyperbolic_distance(z, w)
        assert hyperbolic_distance(apply_L(z), apply_L(w)) <= d0 + 1e-9
        assert hyperbolic_distance(apply_R(z), apply_R(w)) <= d0 + 1e-9
