"""Ribbon radius.

For a crossing ``c`` of edges ``e1`` and ``e2``, ``mu(c)`` is the least radius
``r`` such that the restricted ball ``B(c, r)`` holds both crossing walks and
the walks of some G-path joining an endpoint of ``e1`` to one of ``e2``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InternalError, PreconditionError
from .graph import EmbeddedGraph
from .radial import RadialPlanarization, ball, build_lambda


@dataclass
class RibbonRadiusResult:
    mu_g: int
    per_crossing: dict[int, int] = field(default_factory=dict)
    witness: dict[int, list[int]] = field(default_factory=dict)


class _DSU:
    def __init__(self):
        self.p: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.p
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def test_mu_at_most(lam: RadialPlanarization, v: int, mu: int,
                    want_witness: bool = True) -> tuple[bool, list[int] | None]:
    """Decide ``mu(v) <= mu``; on success also return a ribbon as edge ids."""
    g = lam.g
    if not g.is_dummy(v):
        raise PreconditionError(f"vertex {v} is not a crossing")
    if mu <= 0:
        return False, None
    B = ball(lam, [v], mu).restricted_ball
    e1, e2 = (g.edge(e) for e in g.crossing_edges(v))
    if not all(x in B for x in e1.walk) or not all(x in B for x in e2.walk):
        return False, None
    inside = [e for e in g.edges if all(x in B for x in e.walk)]
    dsu = _DSU()
    for e in inside:
        dsu.union(e.u, e.v)
    if dsu.find(e1.u) != dsu.find(e2.u):
        return False, None
    if not want_witness:
        return True, None
    return True, _witness(inside, e1, e2)


def _witness(inside, e1, e2) -> list[int]:
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in inside:
        adj.setdefault(e.u, []).append((e.v, e.id))
        adj.setdefault(e.v, []).append((e.u, e.id))
    starts = {e1.u, e1.v}
    goals = {e2.u, e2.v}
    prev: dict[int, tuple[int, int] | None] = {s: None for s in sorted(starts)}
    dq = deque(sorted(starts))
    hit = None
    while dq:
        x = dq.popleft()
        if x in goals:
            hit = x
            break
        for y, eid in sorted(adj.get(x, ())):
            if y not in prev:
                prev[y] = (x, eid)
                dq.append(y)
    if hit is None:
        raise InternalError("ribbon endpoints connected but no path found")
    path: list[int] = []
    x = hit
    while prev[x] is not None:
        px, eid = prev[x]
        path.append(eid)
        x = px
    path.reverse()
    return [e1.id, *path, e2.id]


def ribbon_radius(g: EmbeddedGraph, lam: RadialPlanarization | None = None) -> RibbonRadiusResult:
    """Exact ``mu(G)`` and per-crossing ``mu(v)`` by galloping then bisection."""
    lam = lam or build_lambda(g)
    crossings = list(range(g.n_vertices, g.n_total))
    if not crossings:
        return RibbonRadiusResult(1)
    dsu = _DSU()
    for e in g.edges:
        dsu.union(e.u, e.v)
    for v in crossings:
        e1, e2 = (g.edge(e) for e in g.crossing_edges(v))
        if dsu.find(e1.u) != dsu.find(e2.u):
            raise PreconditionError(f"crossing {v} has no ribbon: G is disconnected")
    lo = {v: 0 for v in crossings}  # largest radius known to fail
    hi: dict[int, int] = {}  # smallest radius known to succeed
    cap = 2 * lam.n + 2  # any ball of this radius is everything reachable
    mu = 1
    while True:
        pending = [v for v in crossings if v not in hi]
        for v in pending:
            ok, _ = test_mu_at_most(lam, v, mu, want_witness=False)
            if ok:
                hi[v] = mu
            else:
                lo[v] = max(lo[v], mu)
        if len(hi) == len(crossings):
            break
        if mu > cap:
            raise InternalError("ribbon search did not terminate")
        mu *= 2
    per: dict[int, int] = {}
    wit: dict[int, list[int]] = {}
    for v in crossings:
        a, b = lo[v], hi[v]
        while b - a > 1:
            mid = (a + b) // 2
            if test_mu_at_most(lam, v, mid, want_witness=False)[0]:
                b = mid
            else:
                a = mid
        per[v] = b
        ok, w = test_mu_at_most(lam, v, b)
        assert ok and w is not None
        wit[v] = w
    return RibbonRadiusResult(1 + max(per.values()), per, wit)
