"""Brute-force ground truth, independent of the embedding machinery.

Connectivity comes from a plain augmenting-path max-flow (vertex-split for
kappa) or from exhaustive subset search.  Ribbon radii come from walking
every simple ribbon of a crossing and measuring face-distances on a radial
graph that is traced here from the raw rotation and searched with networkx.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import networkx as nx

from .errors import InternalError
from .graph import AbstractGraph, EmbeddedGraph, is_connected_after_removal, simple_graph_view


@dataclass
class OracleReport:
    value: int | None
    witness: tuple[int, ...] | None = None
    method: str = "flow"
    inconclusive: bool = False


def _abstract(G) -> AbstractGraph:
    return simple_graph_view(G) if isinstance(G, EmbeddedGraph) else G


# ---------------------------------------------------------------------------
# max-flow

class _Flow:
    """Unit-ish capacities, BFS augmenting paths."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(n)]

    def add(self, a: int, b: int, c: int, back: int = 0) -> None:
        self.out[a].append(len(self.head))
        self.head.append(b)
        self.cap.append(c)
        self.out[b].append(len(self.head))
        self.head.append(a)
        self.cap.append(back)

    def maxflow(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        while limit is None or flow < limit:
            prev = [-1] * self.n
            prev[s] = -2
            dq = deque([s])
            while dq and prev[t] == -1:
                x = dq.popleft()
                for a in self.out[x]:
                    y = self.head[a]
                    if self.cap[a] > 0 and prev[y] == -1:
                        prev[y] = a
                        dq.append(y)
            if prev[t] == -1:
                break
            y = t
            while y != s:
                a = prev[y]
                self.cap[a] -= 1
                self.cap[a ^ 1] += 1
                y = self.head[a ^ 1]
            flow += 1
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for a in self.out[x]:
                y = self.head[a]
                if self.cap[a] > 0 and y not in seen:
                    seen.add(y)
                    dq.append(y)
        return seen


def _local_kappa(ag: AbstractGraph, u: int, v: int, limit: int | None):
    n = ag.n
    big = n + 1
    fl = _Flow(2 * n)  # x_in = 2x, x_out = 2x+1
    for x in range(n):
        fl.add(2 * x, 2 * x + 1, big if x in (u, v) else 1)
    for _, a, b in ag.edges:
        if a != b:
            fl.add(2 * a + 1, 2 * b, big)
            fl.add(2 * b + 1, 2 * a, big)
    f = fl.maxflow(2 * u + 1, 2 * v, limit)
    side = fl.reachable(2 * u + 1)
    cut = tuple(x for x in range(n) if 2 * x in side and 2 * x + 1 not in side)
    return f, cut


def _components(ag: AbstractGraph, removed: set[int]) -> list[set[int]]:
    nb = ag.neighbor_sets()
    comps = []
    seen = set(removed)
    for s in range(ag.n):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    dq.append(y)
        comps.append(comp)
    return comps


def oracle_vertex_connectivity(G) -> OracleReport:
    ag = _abstract(G)
    n = ag.n
    if n <= 1:
        return OracleReport(0, (), "flow")
    if len(_components(ag, set())) > 1:
        return OracleReport(0, (), "flow")
    nb = ag.neighbor_sets()
    if all(len(s) == n - 1 for s in nb):
        return OracleReport(n - 1, None, "flow")
    # a minimum cut either misses u (then it separates u from a non-neighbour)
    # or contains it (then it separates two neighbours of u)
    u = min(range(n), key=lambda x: (len(nb[x]), x))
    best, best_cut = n - 1, None
    pairs = [(u, w) for w in range(n) if w != u and w not in nb[u]]
    ns = sorted(nb[u])
    pairs += [(a, b) for a, b in combinations(ns, 2) if b not in nb[a]]
    for a, b in pairs:
        f, cut = _local_kappa(ag, a, b, best)
        if f < best:
            best, best_cut = f, cut
    return OracleReport(best, best_cut, "flow")


def oracle_edge_connectivity(G) -> OracleReport:
    ag = _abstract(G)
    n = ag.n
    if n <= 1:
        return OracleReport(0, (), "flow")
    best: int | None = None
    best_cut: tuple[int, ...] = ()
    for t in range(1, n):
        fl = _Flow(n)
        for eid, a, b in ag.edges:
            if a != b:
                fl.add(a, b, 1, 1)
        f = fl.maxflow(0, t, best)
        if best is None or f < best:
            side = fl.reachable(0)
            best = f
            best_cut = tuple(sorted(eid for eid, a, b in ag.edges
                                    if (a in side) != (b in side)))
    return OracleReport(best, best_cut, "flow")


# ---------------------------------------------------------------------------
# exhaustive enumeration (second method, small n only)

def enum_vertex_connectivity(G) -> OracleReport:
    ag = _abstract(G)
    n = ag.n
    for k in range(0, n - 1):
        for S in combinations(range(n), k):
            if not is_connected_after_removal(ag, vertices=S):
                return OracleReport(k, S, "enumeration")
    return OracleReport(max(n - 1, 0), None, "enumeration")


def enum_edge_connectivity(G) -> OracleReport:
    ag = _abstract(G)
    ids = [eid for eid, a, b in ag.edges if a != b]
    for k in range(len(ids) + 1):
        for T in combinations(ids, k):
            if not is_connected_after_removal(ag, edges=T):
                return OracleReport(k, T, "enumeration")
    return OracleReport(len(ids), tuple(ids), "enumeration")


def all_min_edge_cuts(G, size: int) -> list[tuple[int, ...]]:
    ag = _abstract(G)
    ids = [eid for eid, a, b in ag.edges if a != b]
    return [T for T in combinations(ids, size) if not is_connected_after_removal(ag, edges=T)]


def is_minimal_cut(G, S: Iterable[int]) -> bool:
    ag = _abstract(G)
    S = set(S)
    flaps = _components(ag, S)
    if len(flaps) < 2:
        return False
    nb = ag.neighbor_sets()
    verdict = all(nb[s] & f for s in S for f in flaps)
    if len(S) <= 4:
        direct = all(
            len(_components(ag, set(T))) < 2
            for k in range(len(S)) for T in combinations(sorted(S), k))
        if direct != verdict:
            raise InternalError("minimal-cut criteria disagree")
    return verdict


def minimal_vertex_cuts(G, max_size: int) -> list[tuple[int, ...]]:
    """All minimal vertex cuts with at most ``max_size`` vertices."""
    ag = _abstract(G)
    out = []
    for k in range(1, max_size + 1):
        for S in combinations(range(ag.n), k):
            if is_minimal_cut(ag, S):
                out.append(S)
    return out


# ---------------------------------------------------------------------------
# ribbon radius

def _radial_graph(g: EmbeddedGraph) -> nx.Graph:
    """R(G) traced directly from the rotation lists."""
    ends = {}
    for e in g.edges:
        w = e.walk
        for i in range(len(w) - 1):
            ends[(e.id, i)] = (w[i], w[i + 1])
    # a dart is (segment ref, tail); position in the rotation of its tail
    where = {}
    for x, r in enumerate(g.rotation):
        for k, ref in enumerate(r):
            where[(ref, x)] = k
    R = nx.Graph()
    R.add_nodes_from(("v", x) for x in range(g.n_total))
    done = set()
    fid = 0
    for x, r in enumerate(g.rotation):
        for ref in r:
            if (ref, x) in done:
                continue
            cur = (ref, x)
            while cur not in done:
                done.add(cur)
                sref, tail = cur
                a, b = ends[sref]
                hd = b if tail == a else a
                if a == b:
                    raise InternalError("loop segment")
                R.add_edge(("f", fid), ("v", tail))
                rot = g.rotation[hd]
                k = where[(sref, hd)]
                cur = (rot[(k + 1) % len(rot)], hd)
            fid += 1
    return R


def oracle_ribbon_radius(g: EmbeddedGraph, cap: int = 10 ** 6) -> dict[int, OracleReport]:
    """Per crossing: min over simple ribbons of the max face-distance."""
    if g.n_crossings == 0:
        return {}
    R = _radial_graph(g)
    adj: dict[int, list[tuple[int, int]]] = {x: [] for x in range(g.n_vertices)}
    for e in g.edges:
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    by_id = {e.id: e for e in g.edges}
    out: dict[int, OracleReport] = {}
    for c in range(g.n_vertices, g.n_total):
        dist = nx.single_source_shortest_path_length(R, ("v", c))
        dF = {x: d // 2 for (kind, x), d in dist.items() if kind == "v"}

        def cost(eid: int) -> float:
            return max((dF.get(x, float("inf")) for x in by_id[eid].walk))

        ecost = {e.id: cost(e.id) for e in g.edges}
        crossing = [e.id for e in g.edges if c in e.interior]
        e1, e2 = crossing
        best = float("inf")
        best_path: tuple[int, ...] | None = None
        visits = 0
        blown = False
        for first, last in ((e1, e2), (e2, e1)):
            fe = by_id[first]
            for v0, v1 in ((fe.u, fe.v), (fe.v, fe.u)):
                base = max(ecost[first], ecost[last])
                if base >= best:
                    continue
                # iterative DFS over simple paths starting v0 -first-> v1
                on_path = {v0, v1}
                path = [first]
                stack = [(v1, iter(sorted(adj[v1], key=lambda t: ecost[t[1]])), base)]
                while stack:
                    x, it, cm = stack[-1]
                    step = next(it, None)
                    if step is None:
                        stack.pop()
                        on_path.discard(x)
                        path.pop()
                        continue
                    y, eid = step
                    visits += 1
                    if visits > cap:
                        blown = True
                        break
                    if y in on_path or eid == first:
                        continue
                    m2 = max(cm, ecost[eid])
                    if m2 >= best:
                        continue
                    if eid == last:
                        best = m2
                        best_path = tuple(path + [eid])
                        continue
                    on_path.add(y)
                    path.append(eid)
                    stack.append((y, iter(sorted(adj[y], key=lambda t: ecost[t[1]])), m2))
                if blown:
                    break
            if blown:
                break
        # a blown search has only an upper bound, so no number is reported
        if blown:
            out[c] = OracleReport(None, None, "enumeration", True)
        elif best == float("inf"):
            out[c] = OracleReport(None, None, "enumeration")
        else:
            out[c] = OracleReport(int(best), best_path, "enumeration")
    return out
