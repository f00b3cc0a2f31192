from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nearplanar import generators as gen
from nearplanar.connectivity import check_cosep, triple_from_cut
from nearplanar.drawing import from_straight_line
from nearplanar.errors import PreconditionError
from nearplanar.radial import build_lambda
from nearplanar.slices import (A, B, X, augment_slice, bfs_layering, build_slice, extend_triple,
                               window_starts)


def _nx(lam):
    G = nx.Graph()
    G.add_nodes_from(range(lam.n))
    G.add_edges_from(lam.ends)
    return G


def test_layering_triangle(triangle):
    lay = bfs_layering(build_lambda(triangle))
    # vertex 0 sees the other two vertices and both face-vertices directly
    assert lay.d == 2
    assert lay.members(1) == [0]
    assert lay.members(2) == [1, 2, 3, 4]


def test_layering_single_vertex():
    lay = bfs_layering(build_lambda(gen.gen_complete_planar(1)))
    assert lay.d == 1


@pytest.mark.parametrize("g", [gen.gen_grid(1, 3), gen.gen_grid(4, 4)])
def test_layering_is_bfs(g):
    lam = build_lambda(g)
    dist = nx.single_source_shortest_path_length(_nx(lam), 0)
    assert list(bfs_layering(lam).layer) == [dist[x] + 1 for x in range(lam.n)]


def test_whole_window():
    lam = build_lambda(gen.gen_grid(3, 3))
    lay = bfs_layering(lam)
    sl = build_slice(lam, lay, 1, lay.d)
    assert sl.apexes == [] and sl.n == lam.n
    assert sorted(sl.to_global) == list(range(lam.n))


def test_first_window_has_no_lower_apex():
    lam = build_lambda(gen.gen_grid(5, 5))
    lay = bfs_layering(lam)
    sl = build_slice(lam, lay, 1, 2)
    assert sl.center == sl.from_global[0]
    assert all(sl.layer_tag[a] > 2 for a in sl.apexes)


def test_apex_count_matches_components():
    lam = build_lambda(gen.gen_grid(5, 5))
    lay = bfs_layering(lam)
    G = _nx(lam)
    i, w = 3, 2
    sl = build_slice(lam, lay, i, w)
    low = [x for x in range(lam.n) if lay.layer[x] < i - 1]
    high = [x for x in range(lam.n) if lay.layer[x] > i + w + 1]
    want = sum(nx.number_connected_components(G.subgraph(part)) for part in (low, high) if part)
    assert len(sl.apexes) == want


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["grid", "cif", "counter"]), st.integers(1, 12), st.integers(0, 6))
def test_slice_is_plane_with_bounded_radius(kind, i, w):
    g = {"grid": lambda: gen.gen_grid(5, 6),
         "cif": lambda: gen.gen_convex_clique_in_face(10, 5),
         "counter": lambda: gen.gen_layered_counterexample(4, 1, 1)}[kind]()
    lam = build_lambda(g)
    lay = bfs_layering(lam)
    i = min(i, lay.d)
    sl = build_slice(lam, lay, i, w)
    assert sl.plane.euler_ok()
    assert sl.eccentricity() <= w + 4
    # every Lambda vertex is kept or inside exactly one apex
    kept = [x for x in sl.to_global if x >= 0]
    inside = [x for m in sl.apex_members.values() for x in m]
    assert sorted(kept + inside) == [x for x in range(lam.n) if lay.layer[x]]


def test_window_starts_cover_every_run():
    lam = build_lambda(gen.gen_grid(6, 6))
    lay = bfs_layering(lam)
    for w in range(0, lay.d + 2):
        # a run j..j+w of layers is the middle of window j
        assert set(range(1, lay.d - w + 1)) <= set(window_starts(lay, w))


def test_augment_plain_edge_gets_one_chord(c4):
    lam = build_lambda(c4)
    lay = bfs_layering(lam)
    aug = augment_slice(build_slice(lam, lay, 1, lay.d), c4)
    assert aug.extra_edges == {(min(e.u, e.v), max(e.u, e.v)) for e in c4.edges}
    assert all(len(tp) == 2 for tp in aug.transition.values())
    assert aug.partners == {}


def _two_crossing_edge():
    # one long edge crossed by two others
    pts = [(0, 0), (6, 0), (2, -1), (2, 1), (4, -1), (4, 1)]
    edges = [(0, 1), (2, 3), (4, 5), (0, 2), (2, 4), (4, 1), (0, 3), (3, 5), (5, 1)]
    return from_straight_line(pts, edges)


def test_augment_edge_with_two_dummies():
    g = _two_crossing_edge()
    lam = build_lambda(g)
    lay = bfs_layering(lam)
    sl = build_slice(lam, lay, 1, lay.d)
    aug = augment_slice(sl, g)
    e = g.edge(0)
    assert len(e.interior) == 2
    u, v = sl.local_of(e.u), sl.local_of(e.v)
    new = {p for p in aug.extra_edges
           if {p[0], p[1]} <= {u, v} | {sl.local_of(z) for z in e.interior}}
    assert (min(u, v), max(u, v)) in new
    for z in e.interior:
        assert {u, v} <= aug.partners[sl.local_of(z)]
    assert len(new) <= 5


def test_augment_reentering_edge():
    g = gen.gen_layered_counterexample(4, 1, 1)
    lam = build_lambda(g)
    lay = bfs_layering(lam)
    found = False
    for w in range(0, 4):
        for i in window_starts(lay, w):
            aug = augment_slice(build_slice(lam, lay, i, w), g)
            for tp in aug.transition.values():
                if len(tp) >= 4:
                    found = True
                    # each run is chorded on its own
                    for a, b in zip(tp[::2], tp[1::2]):
                        assert a == b or (min(a, b), max(a, b)) in aug.extra_edges
            if found:
                break
        if found:
            break
    assert found


def test_extend_identity_and_grid_cut():
    g = gen.gen_grid(3, 3)
    lam = build_lambda(g)
    lay = bfs_layering(lam)
    sl = build_slice(lam, lay, 1, lay.d)
    triple = triple_from_cut(lam, g, [1, 3])
    local = {sl.from_global[x]: l for x, l in enumerate(triple.labeling)}
    full = extend_triple(lam, sl, local)
    assert full == list(triple.labeling)
    assert check_cosep(lam, full, g)[0]


def test_extend_rejects_x_on_apex():
    g = gen.gen_grid(5, 5)
    lam = build_lambda(g)
    lay = bfs_layering(lam)
    sl = build_slice(lam, lay, 3, 1)
    assert sl.apexes
    lab = [A] * sl.n
    lab[sl.apexes[0]] = X
    with pytest.raises(PreconditionError):
        extend_triple(lam, sl, lab)
    lab[sl.apexes[0]] = B
    extend_triple(lam, sl, lab)
