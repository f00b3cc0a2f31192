"""Vertex and edge connectivity of embedded graphs.

The drivers search for a co-separating triple whose X-part meets V(G) in
as few vertices as possible.  For ``s = 1, 2, ...`` they cut the BFS layering
of Lambda into windows of ``s(4mu+1)`` layers, solve each window with the
tree-decomposition DP and stop at the first window that admits a triple of
cost ``s``.  The triple is lifted back to Lambda and re-validated before the
cut is reported.
"""
from __future__ import annotations

import logging
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dp import solve_slice_reduced
from .errors import InternalError, PreconditionError
from .graph import (EmbeddedGraph, SubdividedGraph, check, is_connected_after_removal,
                    simple_graph_view, subdivide)
from .oracle import is_minimal_cut
from .radial import DUMMY, FACE, REAL, RadialPlanarization, ball, build_lambda
from .ribbon import ribbon_radius
from .slices import A, B, X, augment_slice, bfs_layering, build_slice, extend_triple, window_starts
from .treedec import TreeDecomposition, augment_td, build_td_bounded_radius

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosepTriple:
    labeling: tuple[str, ...]
    n_real: int

    def part(self, lab: str) -> frozenset[int]:
        return frozenset(x for x, l in enumerate(self.labeling) if l == lab)

    @property
    def A(self) -> frozenset[int]:
        return self.part(A)

    @property
    def X(self) -> frozenset[int]:
        return self.part(X)

    @property
    def B(self) -> frozenset[int]:
        return self.part(B)

    @property
    def cut(self) -> list[int]:
        return sorted(x for x in self.X if x < self.n_real)

    def cut_edges(self, sub: SubdividedGraph) -> list[int]:
        return sorted(sub.subdivision[x] for x in self.X if x in sub.subdivision)


@dataclass
class ConnectivityResult:
    value: int
    cut: list[int]
    mode: str  # "dp" or "trivial-case"
    certificate: CosepTriple | None = None
    mu: int | None = None
    stats: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# co-separating triples

def check_cosep(lam: RadialPlanarization, labeling: Sequence[str] | dict[int, str],
                g: EmbeddedGraph | None = None) -> tuple[bool, str | None]:
    g = g or lam.g
    lab = [labeling[x] for x in range(lam.n)] if isinstance(labeling, dict) else list(labeling)
    if len(lab) != lam.n:
        return False, f"labeling has {len(lab)} entries, Lambda has {lam.n} vertices"
    bad = [x for x, l in enumerate(lab) if l not in (A, X, B)]
    if bad:
        return False, f"vertex {bad[0]} has label {lab[bad[0]]!r}"
    for part in (A, X, B):
        if not any(lab[x] == part for x in range(g.n_vertices)):
            return False, f"C1: no G-vertex labelled {part}"
    for eid, (a, b) in enumerate(lam.ends):
        if {lab[a], lab[b]} == {A, B}:
            return False, f"C2: Lambda edge {eid} joins {a} ({lab[a]}) and {b} ({lab[b]})"
    for e in g.edges:
        if lab[e.u] == X and lab[e.v] == X:
            continue
        seen = {lab[x] for x in e.walk}
        if A in seen and B in seen:
            return False, f"C3: edge {e.id} meets both A and B"
    return True, None


def _flaps(ag, S: set[int]) -> list[list[int]]:
    nb = ag.neighbor_sets()
    seen = set(S)
    out = []
    for s in range(ag.n):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    dq.append(y)
        out.append(sorted(comp))
    return out


def triple_from_cut(lam: RadialPlanarization, g: EmbeddedGraph, S: Iterable[int]) -> CosepTriple:
    """Label Lambda from a minimal vertex cut.

    S becomes X, the flap of the smallest vertex A and every other flap B.
    A crossing or a face-vertex takes the common label of the vertices it
    touches (crossing endpoints, resp. the face boundary) and X otherwise.
    """
    S = set(S)
    ag = simple_graph_view(g)
    if not is_minimal_cut(ag, S):
        raise PreconditionError(f"{sorted(S)} is not a minimal vertex cut")
    lab = [""] * lam.n
    for x in S:
        lab[x] = X
    for k, flap in enumerate(_flaps(ag, S)):
        for x in flap:
            lab[x] = A if k == 0 else B
    for z in range(g.n_vertices, g.n_total):
        ends = set()
        for eid in g.crossing_edges(z):
            e = g.edge(eid)
            ends |= {lab[e.u], lab[e.v]}
        lab[z] = ends.pop() if len(ends) == 1 else X
    for f, walk in enumerate(lam.faces.walks):
        around = {lab[g.tail(t)] for t in walk}
        lab[lam.n_gx + f] = around.pop() if len(around) == 1 else X
    return CosepTriple(tuple(lab), g.n_vertices)


def kernel_diameter(lam: RadialPlanarization, S: Iterable[int], mu: int) -> int:
    members = sorted(ball(lam, S, mu).lambda_ball)
    best = 0
    target = set(members)
    for x in members:
        dist = lam.lambda_distances([x])
        best = max(best, max(dist[y] for y in target))
    return best


# ---------------------------------------------------------------------------
# drivers

def _slice_td(aug) -> TreeDecomposition:
    sl = aug.base
    return augment_td(build_td_bounded_radius(sl.plane, sl.center), aug.partners)


def _solve_window(lam, layering, gx: EmbeddedGraph, i: int, w: int, s: int,
                  x_eligible: set[int], g_vertices: set[int], dump: str | None,
                  td_mode: str = "heuristic"):
    sl = build_slice(lam, layering, i, w)
    aug = augment_slice(sl, gx)
    loc_x = {sl.from_global[x] for x in x_eligible if x in sl.from_global}
    loc_g = {sl.from_global[x] for x in g_vertices if x in sl.from_global}
    # an apex standing for G-vertices is a G-vertex of the slice as well
    loc_g |= {a for a, mem in sl.apex_members.items() if any(x in g_vertices for x in mem)}
    td_plus = _slice_td(aug) if td_mode == "radius" or dump else None
    if td_mode == "radius":
        res, td = solve_slice_reduced(aug, s, loc_x, loc_g, td_plus, heuristic=None)
    else:
        res, td = solve_slice_reduced(aug, s, loc_x, loc_g, heuristic="min-degree")
    if dump:
        with open(os.path.join(dump, f"slice_s{s}_i{i}.td"), "w", encoding="utf-8") as fh:
            fh.write(td_plus.to_pace(sl.n))
    return sl, res


def _driver(lam: RadialPlanarization, gx: EmbeddedGraph, s_max: int, mu: int,
            x_eligible: set[int], g_vertices: set[int], verify, threads: int = 1,
            dump: str | None = None, td_mode: str = "heuristic"):
    layering = bfs_layering(lam, 0)
    for s in range(1, s_max + 1):
        w = s * (4 * mu + 1)
        starts = list(window_starts(layering, w))
        log.debug("s=%d w=%d windows=%d", s, w, len(starts))

        def job(i):
            return i, _solve_window(lam, layering, gx, i, w, s, x_eligible, g_vertices, dump,
                                  td_mode)

        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                results = list(ex.map(job, starts))
        else:
            results = []
            for i in starts:
                results.append(job(i))
                if results[-1][1][1].feasible:
                    break
        for i, (sl, res) in results:
            if not res.feasible:
                continue
            full = extend_triple(lam, sl, res.labeling)
            ok, why = check_cosep(lam, full, gx)
            if not ok:
                raise InternalError(f"window {i}: DP triple rejected: {why}")
            triple = CosepTriple(tuple(full), gx.n_vertices)
            verify(triple, res.sigma)
            return triple, s, {"window": i, "w": w, "windows": len(starts)}
    return None, None, {}


def _connected(g: EmbeddedGraph) -> bool:
    return is_connected_after_removal(simple_graph_view(g))


def vertex_connectivity(g: EmbeddedGraph, mu: int | None = None, threads: int = 1,
                        debug: bool = False, dump: str | None = None,
                        td: str = "heuristic") -> ConnectivityResult:
    check(g)
    if not _connected(g):
        raise PreconditionError("graph is disconnected")
    ag = simple_graph_view(g)
    n = g.n_vertices
    if n <= 1 or ag.is_complete():
        return ConnectivityResult(max(n - 1, 0), [], "trivial-case")
    lam = build_lambda(g)
    mu = _mu(g, lam, mu, debug)
    if dump:
        os.makedirs(dump, exist_ok=True)
        with open(os.path.join(dump, "lambda.dot"), "w", encoding="utf-8") as fh:
            fh.write(lam.to_dot())
    delta = min(len(s) for s in ag.neighbor_sets())
    real = set(range(n))

    def verify(triple: CosepTriple, sigma):
        cut = triple.cut
        if len(cut) != sigma:
            raise InternalError(f"DP cost {sigma} but {len(cut)} cut vertices")
        if is_connected_after_removal(ag, vertices=cut):
            raise InternalError(f"certificate cut {cut} does not disconnect")

    triple, s, stats = _driver(lam, g, min(delta, n - 2), mu, real, real, verify, threads, dump, td)
    if triple is None:
        raise InternalError("no co-separating triple found up to the degree bound")
    return ConnectivityResult(len(triple.cut), triple.cut, "dp", triple, mu, stats)


def edge_connectivity(g: EmbeddedGraph, mu: int | None = None, threads: int = 1,
                      debug: bool = False, dump: str | None = None,
                      td: str = "heuristic") -> ConnectivityResult:
    check(g)
    if not _connected(g):
        raise PreconditionError("graph is disconnected")
    n = g.n_vertices
    if n <= 1:
        return ConnectivityResult(0, [], "trivial-case")
    if n == 2:
        return ConnectivityResult(len(g.edges), sorted(g.edge_ids), "trivial-case")
    ag = simple_graph_view(g)
    sub = subdivide(g)
    gt = sub.graph
    lam = build_lambda(gt)
    mu = _mu(gt, lam, mu, debug)
    if dump:
        os.makedirs(dump, exist_ok=True)
        with open(os.path.join(dump, "lambda.dot"), "w", encoding="utf-8") as fh:
            fh.write(lam.to_dot())
    deg = [0] * n
    for e in g.edges:
        deg[e.u] += 1
        deg[e.v] += 1

    def verify(triple: CosepTriple, sigma):
        cut = triple.cut_edges(sub)
        if len(cut) != sigma:
            raise InternalError(f"DP cost {sigma} but {len(cut)} cut edges")
        if is_connected_after_removal(ag, edges=cut):
            raise InternalError(f"certificate cut {cut} does not disconnect")

    triple, s, stats = _driver(lam, gt, min(deg), mu, set(sub.subdivision),
                               set(range(gt.n_vertices)), verify, threads, dump, td)
    if triple is None:
        raise InternalError("no co-separating triple found up to the degree bound")
    cut = triple.cut_edges(sub)
    return ConnectivityResult(len(cut), cut, "dp", triple, mu, stats)


def _mu(g: EmbeddedGraph, lam: RadialPlanarization, mu: int | None, debug: bool) -> int:
    if mu is None:
        return ribbon_radius(g, lam).mu_g
    if mu < 1:
        raise PreconditionError("mu must be at least 1")
    if debug:
        real = ribbon_radius(g, lam).mu_g
        if mu < real:
            raise InternalError(f"supplied mu={mu} is below the ribbon radius {real}")
    return mu


__all__ = ["CosepTriple", "ConnectivityResult", "check_cosep", "triple_from_cut",
           "kernel_diameter", "vertex_connectivity", "edge_connectivity",
           "REAL", "DUMMY", "FACE"]
