"""Deterministic instance generators.

Everything is drawn with explicit coordinates and planarized exactly by
:mod:`nearplanar.drawing`, so rotations and crossing orders come from the
geometry rather than being assembled by hand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .drawing import Point, from_polylines, from_straight_line
from .graph import EmbeddedGraph, check, serialize_egf


def gen_grid(rows: int, cols: int) -> EmbeddedGraph:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs rows, cols >= 1")
    pts = [(float(c), float(-r)) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((r * cols + c, r * cols + c + 1))
    for r in range(rows - 1):
        for c in range(cols):
            edges.append((r * cols + c, (r + 1) * cols + c))
    g = from_straight_line(pts, edges)
    g.meta["class"] = f"grid {rows} {cols}"
    return check(g)


def _circle(n: int, radius: float = 10.0, wobble: float = 0.0) -> list[Point]:
    # a small deterministic wobble keeps diagonals from being concurrent
    return [(radius * math.cos(2 * math.pi * i / n + wobble * math.sin(1.7 * i + 0.3)),
             radius * math.sin(2 * math.pi * i / n + wobble * math.sin(1.7 * i + 0.3)))
            for i in range(n)]


def gen_cycle(n: int) -> EmbeddedGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    g = from_straight_line(_circle(n), [(i, (i + 1) % n) for i in range(n)])
    g.meta["class"] = f"cycle {n}"
    return check(g)


def gen_complete_planar(n: int) -> EmbeddedGraph:
    if not 1 <= n <= 4:
        raise ValueError("planar complete graphs need 1 <= n <= 4")
    pts: list[Point] = [(0.0, 0.0), (4.0, 0.0), (1.0, 3.0), (1.6, 1.0)][:n]
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    g = from_straight_line(pts, edges)
    g.meta["class"] = f"complete {n}"
    return check(g)


def gen_convex_clique_in_face(m: int, t: int) -> EmbeddedGraph:
    """An m-cycle with a clique on t of its vertices drawn inside the face."""
    if m < 3 or not 1 <= t <= m:
        raise ValueError("need m >= 3 and 1 <= t <= m")
    pts = _circle(m, wobble=0.08)
    chosen = sorted({(j * m) // t for j in range(t)})
    cyc = {(min(i, (i + 1) % m), max(i, (i + 1) % m)) for i in range(m)}
    edges = [(i, (i + 1) % m) for i in range(m)]
    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            u, v = chosen[a], chosen[b]
            if (u, v) not in cyc:
                edges.append((u, v))
    g = from_straight_line(pts, edges)
    g.meta["class"] = f"clique-in-face {m} {t}"
    return check(g)


# ---------------------------------------------------------------------------
# map graphs

@dataclass
class Witness:
    """Plane bipartite nation/point graph given by coordinates."""

    nations: list[Point]
    points: list[Point]
    incidences: list[tuple[int, int]]  # (nation, point)
    port_radius: float = 0.3

    def point_degree(self) -> int:
        deg = [0] * len(self.points)
        for _, p in self.incidences:
            deg[p] += 1
        return max(deg, default=0)


def witness_grid(rows: int, cols: int) -> Witness:
    """Nations are the unit squares of a grid, points its vertices."""
    nations = [(c + 0.5, -(r + 0.5)) for r in range(rows) for c in range(cols)]
    points = [(float(c), float(-r)) for r in range(rows + 1) for c in range(cols + 1)]
    inc = []
    for r in range(rows):
        for c in range(cols):
            nid = r * cols + c
            for dr in (0, 1):
                for dc in (0, 1):
                    inc.append((nid, (r + dr) * (cols + 1) + c + dc))
    return Witness(nations, points, inc, port_radius=0.12)


def witness_wheel(d: int) -> Witness:
    """One central point of degree d; each consecutive pair of its nations
    also meets a private outer nation at a degree-3 point."""
    nations: list[Point] = []
    for i in range(d):
        a = 2 * math.pi * i / d
        nations.append((4 * math.cos(a), 4 * math.sin(a)))
    for i in range(d):
        a = 2 * math.pi * (i + 0.5) / d
        nations.append((9 * math.cos(a), 9 * math.sin(a)))
    points: list[Point] = [(0.0, 0.0)]
    for i in range(d):
        a = 2 * math.pi * (i + 0.5) / d
        points.append((6 * math.cos(a), 6 * math.sin(a)))
    inc = [(i, 0) for i in range(d)]
    for i in range(d):
        inc += [(i, 1 + i), ((i + 1) % d, 1 + i), (d + i, 1 + i)]
    return Witness(nations, points, inc, port_radius=0.5)


def gen_map_from_witness(wit: Witness) -> EmbeddedGraph:
    """Map graph of a witness, each point's neighbourhood drawn as a convex
    clique on a small circle of ports around the point."""
    check(from_straight_line(list(wit.nations) + list(wit.points),
                             [(a, len(wit.nations) + p) for a, p in wit.incidences]))
    around: dict[int, list[int]] = {}
    for a, p in wit.incidences:
        around.setdefault(p, []).append(a)
    eps = wit.port_radius
    edges: list[tuple[int, int]] = []
    bends: dict[int, list[Point]] = {}
    done: set[tuple[int, int]] = set()
    for p in sorted(around):
        px, py = wit.points[p]
        ang = {a: math.atan2(wit.nations[a][1] - py, wit.nations[a][0] - px) for a in around[p]}
        ring = sorted(around[p], key=lambda a: ang[a])  # counterclockwise
        k = len(ring)
        if k < 2:
            continue
        spread = min(0.5, math.pi / (2 * k))

        def port(a: int, b: int) -> Point:
            # later ports of a cluster serve earlier targets (ccw from the
            # cluster), so chords sharing a nation do not cross
            i = ring.index(a)
            j = (ring.index(b) - i) % k - 1
            off = spread * ((k - 2) / 2 - j) / (k - 1)
            return (px + eps * math.cos(ang[a] + off), py + eps * math.sin(ang[a] + off))

        for i, a in enumerate(ring):
            for b in ring[i + 1:]:
                key = (min(a, b), max(a, b))
                if key in done:
                    continue
                done.add(key)
                bends[len(edges)] = [port(a, b), port(b, a)]
                edges.append((a, b))
    g = from_polylines(wit.nations, edges, bends)
    g.meta["class"] = "map"
    g.meta["point_degree"] = wit.point_degree()
    return check(g)


# ---------------------------------------------------------------------------
# layered counterexample

@dataclass
class _Polar:
    rho: float
    theta: float

    def xy(self) -> Point:
        return (self.rho * math.cos(self.theta), self.rho * math.sin(self.theta))


def _spiral(a: _Polar, b: _Polar, steps: int) -> list[Point]:
    return [_Polar(a.rho + (b.rho - a.rho) * s / steps,
                   a.theta + (b.theta - a.theta) * s / steps).xy()
            for s in range(1, steps)]


@dataclass
class _Layout:
    points: list[Point] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)
    bends: dict[int, list[Point]] = field(default_factory=dict)

    def vertex(self, p: Point) -> int:
        self.points.append(p)
        return len(self.points) - 1

    def edge(self, a: int, b: int, bends: Sequence[Point] = ()) -> int:
        if bends:
            self.bends[len(self.edges)] = list(bends)
        self.edges.append((a, b))
        return len(self.edges) - 1


def gen_layered_counterexample(k: int, p: int, r: int) -> EmbeddedGraph:
    """Two interleaved copies of a ring-of-cliques graph joined by p edges.

    The drawing lives on concentric circles in the plane instead of on a
    cylinder: ring ``l`` (radius grows with ``l``) carries layer ``l // 2``
    of copy R for even ``l`` and of copy B for odd ``l``, and the B cliques
    sit half a step further round.  Each clique has ``2m+2`` vertices
    (``m = floor(sqrt(k))``) in convex position: m facing each ring
    neighbour, one facing outwards and one inwards.  Consecutive cliques of
    a ring share an m-matching drawn along the ring; clique j of a layer is
    joined to clique j of the next layer of the same copy by a near-radial
    edge, which crosses the matching of the other copy's ring in between.
    The planted edges run from R layer ceil(r/2) to B layer ceil(r/2) at
    cliques 0, r, 2r, ... ; their ids are in ``meta["planted"]``.
    """
    m = math.isqrt(k)
    if k < 1 or r < 1 or p < 1:
        raise ValueError("need k, p, r >= 1")
    if p >= 2 * m:
        raise ValueError("need p < 2*floor(sqrt(k))")
    L = max(2 * m, r * p)
    size = 2 * m + 2
    R0, D, s = 6.0 * L / math.pi + 4.0, 8.0, 1.6
    lay = _Layout()
    # local angles (degrees, 0 = direction of increasing theta)
    fwd = [-32 + 64 * (i + 0.5) / m + 3.0 * i for i in range(m)]
    back = [180 - a + 2.5 for a in fwd]  # mirror images, same radial level
    out_a, in_a = 87.0, 272.0
    n_rings = 2 * r
    cliques: dict[tuple[int, int], dict[str, list[int]]] = {}
    for ring in range(n_rings):
        rho = R0 + D * ring
        off = 0.5 if ring % 2 else 0.0
        for j in range(L):
            th = 2 * math.pi * (j + off) / L
            ur = (math.cos(th), math.sin(th))
            ut = (-math.sin(th), math.cos(th))
            cx, cy = rho * ur[0], rho * ur[1]

            def at(deg: float) -> Point:
                a = math.radians(deg)
                return (cx + s * (math.cos(a) * ut[0] + math.sin(a) * ur[0]),
                        cy + s * (math.cos(a) * ut[1] + math.sin(a) * ur[1]))

            ids = {"fwd": [lay.vertex(at(a)) for a in fwd],
                   "back": [lay.vertex(at(a)) for a in back],
                   "out": [lay.vertex(at(out_a))], "in": [lay.vertex(at(in_a))]}
            allv = ids["fwd"] + ids["back"] + ids["out"] + ids["in"]
            assert len(allv) == size
            for x in range(size):
                for y in range(x + 1, size):
                    lay.edge(allv[x], allv[y])
            cliques[(ring, j)] = ids

    def polar(v: int) -> _Polar:
        x, y = lay.points[v]
        return _Polar(math.hypot(x, y), math.atan2(y, x))

    def unwrap(a: _Polar, b: _Polar, forward: bool) -> _Polar:
        t = b.theta
        if forward:
            while t <= a.theta:
                t += 2 * math.pi
        else:
            while t >= a.theta:
                t -= 2 * math.pi
        return _Polar(b.rho, t)

    for ring in range(n_rings):
        for j in range(L):
            here, there = cliques[(ring, j)], cliques[(ring, (j + 1) % L)]
            for i in range(m):
                a, b = here["fwd"][i], there["back"][i]
                pa = polar(a)
                pb = unwrap(pa, polar(b), True)
                lay.edge(a, b, _spiral(pa, pb, 12))
    for ring in range(n_rings - 2):
        for j in range(L):
            a = cliques[(ring, j)]["out"][0]
            b = cliques[(ring + 2, j)]["in"][0]
            lay.edge(a, b)
    t = (r + 1) // 2
    ring_r, ring_b = 2 * (t - 1), 2 * (t - 1) + 1
    planted = []
    for q in range(p):
        j = q * r
        a = cliques[(ring_r, j)]["out"][0]
        b = cliques[(ring_b, j)]["in"][0]
        pa = polar(a)
        pb = unwrap(pa, polar(b), True)
        planted.append(lay.edge(a, b, _spiral(pa, pb, 10)))
    g = from_polylines(lay.points, lay.edges, lay.bends)
    g.meta["class"] = f"counterexample {k} {p} {r}"
    g.meta["planted"] = " ".join(map(str, planted))
    return check(g)


def planted_edges(g: EmbeddedGraph) -> list[int]:
    return [int(x) for x in str(g.meta.get("planted", "")).split()]


def write_egf(g: EmbeddedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_egf(g))
