from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from nearplanar import generators as gen
from nearplanar.graph import subdivide, validate
from nearplanar.oracle import all_min_edge_cuts, oracle_edge_connectivity, oracle_vertex_connectivity
from nearplanar.radial import build_lambda, face_distance
from nearplanar.ribbon import ribbon_radius


def _ok(g):
    assert validate(g).ok
    lam = build_lambda(g)
    assert lam.plane.euler_ok()
    return g


def test_grid_examples():
    g = _ok(gen.gen_grid(1, 1))
    assert (g.n_vertices, len(g.edges)) == (1, 0)
    g = _ok(gen.gen_grid(2, 2))
    assert (g.n_vertices, len(g.edges), g.n_crossings) == (4, 4, 0)
    g = gen.gen_grid(3, 3)
    assert oracle_vertex_connectivity(g).value == oracle_edge_connectivity(g).value == 2


def test_small_classics():
    assert oracle_vertex_connectivity(gen.gen_cycle(5)).value == 2
    assert oracle_edge_connectivity(gen.gen_cycle(5)).value == 2
    assert oracle_vertex_connectivity(gen.gen_complete_planar(4)).value == 3
    assert oracle_edge_connectivity(gen.gen_complete_planar(3)).value == 2
    with pytest.raises(ValueError):
        gen.gen_complete_planar(5)
    with pytest.raises(ValueError):
        gen.gen_cycle(2)


@pytest.mark.parametrize("t,q", [(3, 0), (4, 1), (5, 5), (6, 15)])
def test_clique_in_face_crossings(t, q):
    assert _ok(gen.gen_convex_clique_in_face(7, t)).n_crossings == q


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 16), st.integers(1, 7))
def test_clique_in_face_has_no_x_crossings(m, t):
    g = _ok(gen.gen_convex_clique_in_face(m, min(t, m)))
    pairs = {frozenset((e.u, e.v)) for e in g.edges}
    for z in range(g.n_vertices, g.n_total):
        ends = {x for eid in g.crossing_edges(z) for x in (g.edge(eid).u, g.edge(eid).v)}
        assert all(frozenset((a, b)) in pairs for a in ends for b in ends if a != b)


@pytest.mark.parametrize("d,q", [(3, 0), (4, 1), (5, 5)])
def test_map_wheel(d, q):
    g = _ok(gen.gen_map_from_witness(gen.witness_wheel(d)))
    assert g.n_crossings == q
    assert int(g.meta["point_degree"]) == d
    assert ribbon_radius(g).mu_g <= 3 * d * d / 8


def test_map_grid():
    g = _ok(gen.gen_map_from_witness(gen.witness_grid(2, 2)))
    assert g.n_crossings == 1
    g = _ok(gen.gen_map_from_witness(gen.witness_grid(3, 4)))
    assert ribbon_radius(g).mu_g <= 3 * 16 / 8


@pytest.mark.parametrize("p,r", [(1, 1), (2, 2), (3, 1)])
def test_counterexample_lambda(p, r):
    g = _ok(gen.gen_layered_counterexample(4, p, r))
    rep = oracle_edge_connectivity(g)
    assert rep.value == p
    assert list(rep.witness) == sorted(gen.planted_edges(g))


def test_counterexample_cut_is_unique():
    g = gen.gen_layered_counterexample(4, 2, 2)
    assert all_min_edge_cuts(g, 2) == [tuple(sorted(gen.planted_edges(g)))]


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 2)])
def test_planted_edges_far_apart(p, r):
    g = gen.gen_layered_counterexample(4, p, r)
    sub = subdivide(g)
    lam = build_lambda(sub.graph)
    planted = set(gen.planted_edges(g))
    ts = sorted(t for t, e in sub.subdivision.items() if e in planted)
    assert len(ts) == p
    for a in ts:
        for b in ts:
            if a < b:
                assert face_distance(lam, a, [b])[b] >= r


def test_counterexample_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gen.gen_layered_counterexample(4, 4, 1)
    with pytest.raises(ValueError):
        gen.gen_layered_counterexample(4, 1, 0)


def test_deterministic():
    a = gen.gen_layered_counterexample(4, 2, 1)
    b = gen.gen_layered_counterexample(4, 2, 1)
    assert [e.walk for e in a.edges] == [e.walk for e in b.edges]
    assert a.rotation == b.rotation
