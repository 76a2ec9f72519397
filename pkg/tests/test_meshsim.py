from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest

from leblab.errors import InputError, UnmatchedShapeKey
from leblab.exactnum import QuadVal
from leblab.graph import adjacency_matrix, build_graph
from leblab.meshsim import (
    PlanarTriangle,
    bisect,
    point_shape_key,
    run_mesh,
    seed_triangle,
    shape_key,
    simulate,
    terminal_area_fraction,
    tree_expand,
    tree_expand_levels,
)
from leblab.orbit import compute_orbit
from leblab.sampling import geodesic_samples
from leblab.shapespace import HALF, ZETA, ShapePoint, apply_L, apply_R
from leblab.spectral import collapse_counts, convergence_rate, counts_at_step

EQUILATERAL = ShapePoint(HALF, HALF, 3)


def test_seed_triangles():
    t = seed_triangle(ZETA)
    assert [(float(x), float(y)) for x, y in t.vertices] == [(0, 0), (1, 0), (0.5, 0.5)]
    t = seed_triangle(EQUILATERAL)
    assert t.v2 == (QuadVal(HALF, 0, 3), QuadVal(0, HALF, 3))


def test_collinear_rejected():
    p = lambda x, y: (QuadVal(x), QuadVal(y))
    with pytest.raises(InputError):
        PlanarTriangle(p(0, 0), p(1, 1), p(2, 2))


def test_bisect_zeta_and_equilateral():
    c1, c2 = bisect(seed_triangle(ZETA))
    assert shape_key(c1) == shape_key(c2) == point_shape_key(ZETA)
    e1, e2 = bisect(seed_triangle(EQUILATERAL))
    assert shape_key(e1) == shape_key(e2)
    t = seed_triangle(EQUILATERAL)
    assert e1.area2() * 2 == t.area2() == e2.area2() * 2


def test_simulate_examples(generic_I, q3_point):
    assert simulate(ZETA, 5) == [32]
    z = generic_I
    orb = compute_orbit(z)
    order = [orb.index[w] for w in (z, apply_R(apply_R(z)), apply_L(z), apply_R(z))]
    c = simulate(z, 2)
    assert [c[i] for i in order] == [2, 2, 0, 0]
    g = build_graph(compute_orbit(q3_point))
    assert simulate(q3_point, 10) == collapse_counts(counts_at_step(adjacency_matrix(g), 10), g)


def test_tree_expand_examples(q3_point):
    assert tree_expand(ZETA, 1) == [2]
    assert tree_expand(q3_point, 0) == [1] + [0] * 26


@pytest.mark.parametrize("name", sorted(geodesic_samples()))
def test_triple_oracle_on_geodesics(name):
    z = geodesic_samples()[name]
    run = run_mesh(z, 8)
    g = build_graph(run.orbit)
    A = adjacency_matrix(g)
    assert run.levels == tree_expand_levels(z, 8, orbit=run.orbit)
    assert run.levels[-1] == collapse_counts(counts_at_step(A, 8), g)


def test_mirror_seed_gives_same_counts(q3_point):
    assert run_mesh(q3_point, 7, mirror=True).levels == run_mesh(q3_point, 7).levels


def test_cap_and_wrong_orbit(q3_point, generic_I):
    with pytest.raises(InputError):
        simulate(ZETA, 17)
    with pytest.raises(InputError):
        tree_expand(ZETA, -1)
    with pytest.raises(UnmatchedShapeKey):
        run_mesh(q3_point, 1, orbit=compute_orbit(generic_I))


def test_terminal_area_fraction(generic_I, q3_point):
    assert terminal_area_fraction(ZETA, 4) == 1
    for j in (1, 3, 6):
        assert terminal_area_fraction(generic_I, j) == 1
    assert terminal_area_fraction(q3_point, 9) == terminal_area_fraction(q3_point, 9, method="tree")
    with pytest.raises(InputError):
        terminal_area_fraction(ZETA, 2, method="magic")


def test_non_terminal_area_decays(q3_point):
    g = build_graph(compute_orbit(q3_point))
    xi = convergence_rate(adjacency_matrix(g))
    js = np.arange(4, 15)
    logs = [math.log(float(1 - terminal_area_fraction(q3_point, int(j), method="tree"))) for j in js]
    slope = np.polyfit(js, logs, 1)[0]
    assert slope <= math.log(xi) + 0.1
    assert terminal_area_fraction(q3_point, 14, method="tree") > terminal_area_fraction(q3_point, 4, method="tree")


def test_angle_bound(q3_point):
    run = run_mesh(q3_point, 10, check=False)
    assert run.min_angle >= run.seed_min_angle / 2 - 1e-9
    assert F(sum(run.counts())) == 2**10
