"""Turn a polyline drawing into an :class:`EmbeddedGraph`.

Coordinates are converted to exact rationals, so intersections and
degeneracies (a curve through a vertex or a bend, overlapping pieces,
three curves through one point) are detected exactly.  Degenerate input
raises ``ValueError``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .graph import EmbeddedGraph, ParentEdge

Point = tuple[float, float]


def _q(p) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0]), Fraction(p[1]))


def _orient(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, c) -> bool:
    """c collinear with and strictly between a and b."""
    if _orient(a, b, c) != 0:
        return False
    return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
            and c != a and c != b)


def _intersect(a, b, c, d):
    """Proper intersection of segments ab and cd.

    Returns (t, s, point) with 0 < t, s < 1, None when disjoint, and raises
    on touching or overlapping configurations (other than shared ends).
    """
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    shared = {a, b} & {c, d}
    if o1 == 0 and o2 == 0:
        # collinear pieces
        if _on_segment(a, b, c) or _on_segment(a, b, d) or \
                _on_segment(c, d, a) or _on_segment(c, d, b):
            raise ValueError("overlapping collinear pieces")
        if len(shared) == 2:
            raise ValueError("overlapping collinear pieces")
        return None
    if shared:
        return None
    if (o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d)) or \
            (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)):
        raise ValueError("a curve passes through a vertex or bend")
    if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0) or 0 in (o1, o2, o3, o4):
        return None
    t = o3 / (o3 - o4)
    s = o1 / (o1 - o2)
    pt = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    return t, s, pt


def from_polylines(points: Sequence[Point], edges: Sequence[tuple[int, int]],
                   bends: dict[int, Sequence[Point]] | None = None) -> EmbeddedGraph:
    """Planarize a drawing whose edge ``j`` is the polyline
    ``points[u] -> bends[j]... -> points[v]``; edge ids are ``0..m-1``."""
    bends = bends or {}
    n = len(points)
    pts = [_q(p) for p in points]
    if len(set(pts)) != n:
        raise ValueError("coincident vertices")
    curves: list[list[tuple[Fraction, Fraction]]] = []
    for j, (u, v) in enumerate(edges):
        curves.append([pts[u], *(_q(b) for b in bends.get(j, ())), pts[v]])
    pieces = []  # (edge, piece index, a, b, bbox)
    for j, c in enumerate(curves):
        for k in range(len(c) - 1):
            a, b = c[k], c[k + 1]
            box = (min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]))
            pieces.append((j, k, a, b, box))
    # bucket pieces and vertices on a uniform grid of float cells; exact
    # tests are only run on pairs that share a cell
    ext = sorted(max(float(bx[1] - bx[0]), float(bx[3] - bx[2])) for *_, bx in pieces)
    cell = max(ext[len(ext) // 2], 1e-9) if ext else 1.0

    def cells(box):
        x0, x1 = math.floor(float(box[0]) / cell - 1e-9), math.floor(float(box[1]) / cell + 1e-9)
        y0, y1 = math.floor(float(box[2]) / cell - 1e-9), math.floor(float(box[3]) / cell + 1e-9)
        return [(cx, cy) for cx in range(x0, x1 + 1) for cy in range(y0, y1 + 1)]

    bucket: dict[tuple[int, int], list[int]] = {}
    for i, pc in enumerate(pieces):
        for c in cells(pc[4]):
            bucket.setdefault(c, []).append(i)
    vbucket: dict[tuple[int, int], list[int]] = {}
    for x, p in enumerate(pts):
        for c in cells((p[0], p[0], p[1], p[1])):
            vbucket.setdefault(c, []).append(x)
    # a vertex lying inside a piece is degenerate
    for j, k, a, b, box in pieces:
        near = {x for c in cells(box) for x in vbucket.get(c, ())}
        for x in sorted(near):
            p = pts[x]
            if box[0] <= p[0] <= box[1] and box[2] <= p[1] <= box[3] and _on_segment(a, b, p):
                raise ValueError(f"edge {j} passes through vertex {x}")
    hits: list[tuple[int, Fraction, int, Fraction, tuple]] = []
    pairs: set[tuple[int, int]] = set()
    for members in bucket.values():
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                pairs.add((members[x], members[y]))
    for h, i in sorted(pairs):
        j, k, a, b, box = pieces[i]
        j2, k2, c, d, box2 = pieces[h]
        if box2[0] > box[1] or box2[1] < box[0] or box2[2] > box[3] or box2[3] < box[2]:
            continue
        if j2 == j and abs(k2 - k) <= 1:
            continue
        r = _intersect(a, b, c, d)
        if r is None:
            continue
        if j2 == j:
            raise ValueError(f"edge {j} crosses itself")
        t, s_, pt = r
        hits.append((j, k + t, j2, k2 + s_, pt))
    seen_pts: set = set()
    for h in hits:
        if h[4] in seen_pts:
            raise ValueError("three curves through one point")
        seen_pts.add(h[4])
    hits.sort(key=lambda h: (min(h[0], h[2]), max(h[0], h[2]), h[1] if h[0] < h[2] else h[3]))
    q = len(hits)
    along: list[list[tuple[Fraction, int]]] = [[] for _ in edges]
    coord: dict[int, tuple[Fraction, Fraction]] = {x: p for x, p in enumerate(pts)}
    for idx, (j, tj, j2, tj2, pt) in enumerate(hits):
        z = n + idx
        along[j].append((tj, z))
        along[j2].append((tj2, z))
        coord[z] = pt
    pedges = []
    for j, (u, v) in enumerate(edges):
        interior = tuple(z for _, z in sorted(along[j]))
        pedges.append(ParentEdge(j, u, v, interior))

    tposs = []
    for j, c in enumerate(curves):
        tposs.append([Fraction(0)] + [t for t, _ in sorted(along[j])] + [Fraction(len(c) - 1)])

    def direction(j: int, x: int, i: int, walk: tuple[int, ...]) -> float:
        # angle of segment i of edge j as it leaves vertex x
        c, tp = curves[j], tposs[j]
        if walk[i] == x:
            t0 = tp[i]
            nxt = _at(c, min(tp[i + 1], Fraction(math.floor(t0) + 1)))
        else:
            t0 = tp[i + 1]
            nxt = _at(c, max(tp[i], Fraction(math.ceil(t0) - 1)))
        p = coord[x]
        return math.atan2(float(nxt[1] - p[1]), float(nxt[0] - p[0]))

    inc: list[list[tuple[float, tuple[int, int]]]] = [[] for _ in range(n + q)]
    for e in pedges:
        w = e.walk
        for i in range(e.n_segments):
            for x in (w[i], w[i + 1]):
                inc[x].append((direction(e.id, x, i, w), (e.id, i)))
    rotation = []
    for x in range(n + q):
        # clockwise = decreasing angle
        rotation.append([ref for _, ref in sorted(inc[x], key=lambda t: -t[0])])
    return EmbeddedGraph(n, q, pedges, rotation)


def _at(c, t: Fraction):
    k = int(t)
    if k >= len(c) - 1:
        return c[-1]
    f = t - k
    a, b = c[k], c[k + 1]
    return (a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]))


def from_straight_line(points: Sequence[Point], edges: Sequence[tuple[int, int]]) -> EmbeddedGraph:
    return from_polylines(points, edges, None)
