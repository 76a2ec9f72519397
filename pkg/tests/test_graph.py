from __future__ import annotations

from fractions import Fraction as F
from pathlib import Path

import networkx as nx
import pytest

from leblab.graph import (
    AdjMatrix,
    adjacency_matrix,
    build_graph,
    is_k22,
    reachable_from,
    scc,
    terminal_vertex_sets,
    to_dot,
)
from leblab.orbit import compute_orbit, terminal_quadruples
from leblab.sampling import geodesic_samples, random_points
from leblab.shapespace import ZETA, ShapePoint, apply_L, apply_R

SNAPSHOTS = Path(__file__).parent / "snapshots"


def _check_well_formed(g):
    out = {}
    for s, t, lab in g.edges:
        out.setdefault(s, []).append((lab, t))
    for v in range(g.n):
        labels = sorted(lab for lab, _ in out[v])
        assert labels == ["L", "R"]
        targets = [t for _, t in out[v]]
        assert len(set(targets)) == 2 and v not in targets
    A = adjacency_matrix(g)
    assert A.column_sums() == [2] * g.n
    assert all(a in (0, 1) for row in A.entries for a in row)
    assert reachable_from(g, 0) == set(range(g.n))


def test_generic_I_graph(generic_I):
    g = build_graph(compute_orbit(generic_I))
    assert g.n == 4 and len(g.edges) == 8
    z = generic_I
    idx = g.orbit.index
    part_a = {idx[z], idx[apply_R(apply_R(z))]}
    part_b = {idx[apply_L(z)], idx[apply_R(z)]}
    for s, t, _ in g.edges:
        assert (s in part_a) != (t in part_a)
    assert part_a | part_b == set(range(4))
    assert is_k22(g, [0, 1, 2, 3])


def test_block_matrix(generic_I):
    g = build_graph(compute_orbit(generic_I))
    A = adjacency_matrix(g)
    z = generic_I
    idx = g.orbit.index
    order = [idx[z], idx[apply_R(apply_R(z))], idx[apply_L(z)], idx[apply_R(z)]]
    block = [[A.entries[i][j] for j in order] for i in order]
    assert block == [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]


def test_zeta_graph():
    g = build_graph(compute_orbit(ZETA))
    assert g.n == 4
    _check_well_formed(g)
    assert is_k22(g, list(range(4)))
    assert set(g.collapse) == {0}


def test_three_quadruple_graph(q3_point):
    g = build_graph(compute_orbit(q3_point))
    _check_well_formed(g)
    sets = terminal_vertex_sets(g)
    assert len(sets) == 3
    assert all(is_k22(g, s) for s in sets)
    assert all(set(s) <= reachable_from(g, 0) for s in sets)


@pytest.mark.parametrize("name", ["abs_root2", "abs_minus1_root2", "re_half", "zeta"])
def test_non_generic_resolution(name):
    z = geodesic_samples()[name]
    orb = compute_orbit(z)
    assert not orb.is_generic()
    g = build_graph(orb)
    _check_well_formed(g)
    assert len(terminal_vertex_sets(g)) == len(terminal_quadruples(orb))


def test_random_graphs_well_formed():
    for z in random_points(25, seed=3, max_den=50):
        _check_well_formed(build_graph(compute_orbit(z)))


def _nx_sccs(g):
    G = nx.DiGraph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((s, t) for s, t, _ in g.edges)
    return {frozenset(c) for c in nx.strongly_connected_components(G)}


def test_scc_against_networkx(q3_point, thin_pair):
    for z in (q3_point, *thin_pair, ZETA, *random_points(10, seed=9, max_den=40)):
        g = build_graph(compute_orbit(z))
        assert {frozenset(c) for c in scc(g)} == _nx_sccs(g)


def test_scc_shapes(q3_point, generic_I):
    assert [sorted(c) for c in scc(build_graph(compute_orbit(generic_I)))] == [[0, 1, 2, 3]]
    g = build_graph(compute_orbit(q3_point))
    closed = [c for c in scc(g) if all(t in c for s, t, _ in g.edges if s in c)]
    assert sorted(sorted(c) for c in closed) == sorted(terminal_vertex_sets(g))
    assert all(is_k22(g, c) for c in closed)


def test_adjmatrix_transpose_convention(generic_I):
    g = build_graph(compute_orbit(generic_I))
    A = adjacency_matrix(g)
    assert isinstance(A, AdjMatrix)
    for s, t, _ in g.edges:
        assert A.entries[t][s] == 1


def test_dot_snapshot(q3_point):
    dot = to_dot(build_graph(compute_orbit(q3_point)))
    assert dot == to_dot(build_graph(compute_orbit(q3_point)))
    assert dot == (SNAPSHOTS / "q3_graph.dot").read_text()


def test_dot_styles(generic_I):
    dot = to_dot(build_graph(compute_orbit(generic_I)))
    assert "style=dashed" in dot and "style=solid" in dot and "cluster_q0" in dot
