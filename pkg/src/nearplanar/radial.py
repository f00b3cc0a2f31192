"""Radial planarization, face-distance, balls and ball boundaries.

Lambda(G) adds one face-vertex per face of G^x and joins it to every
distinct vertex on the face boundary.  The radial graph R(G) keeps only
those face-vertex edges; face-distance is half the R(G) hop distance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError
from .graph import EmbeddedGraph, faces
from .plane import PlaneGraph, bfs

REAL, DUMMY, FACE = "real", "dummy", "face"


class RadialPlanarization:
    """Lambda(G) as a plane graph.

    Vertex ids ``0..N-1`` are those of G^x, face-vertices follow in face
    traversal order.  Edge ids ``0..S-1`` are the G^x segments (same ids as
    in the embedded graph), radial edges come after.
    """

    def __init__(self, g: EmbeddedGraph):
        self.g = g
        fs = faces(g)
        self.faces = fs
        N = g.n_total
        self.n_gx = N
        self.n_faces = len(fs)
        self.n = N + self.n_faces
        self.kind = [REAL] * g.n_vertices + [DUMMY] * g.n_crossings + [FACE] * self.n_faces
        self.face_of = {N + f: f for f in range(self.n_faces)}
        ends = list(g.segments())
        n_seg = len(ends)
        # corner of dart t = (tail(t), just before t in the rotation)
        corner_edge: dict[int, int] = {}
        face_rot: list[list[int]] = []
        radial_seen: dict[tuple[int, int], int] = {}
        for f, walk in enumerate(fs.walks):
            fv = N + f
            fr = []
            for t in walk:
                x = g.tail(t)
                key = (fv, x)
                if key in radial_seen:
                    continue
                eid = len(ends)
                ends.append((x, fv))
                radial_seen[key] = eid
                corner_edge[t] = eid
                fr.append(eid)
            # a face walk runs counterclockwise around its face-vertex
            face_rot.append(fr[::-1])
        if g.n_segments == 0 and self.n_faces:
            pass  # lone vertex: its face-vertex stays isolated
        rotation: list[list[int]] = []
        for x in range(N):
            r = []
            for d in g.darts_at(x):
                if d in corner_edge:
                    r.append(corner_edge[d])
                r.append(d >> 1)
            rotation.append(r)
        rotation.extend(face_rot)
        self.n_segments = n_seg
        self.plane = PlaneGraph(self.n, ends, rotation)
        self.ends = self.plane.ends
        rad: list[list[int]] = [[] for _ in range(self.n)]
        for e in range(n_seg, len(ends)):
            a, b = ends[e]
            rad[a].append(b)
            rad[b].append(a)
        self.radial_adj = [sorted(set(r)) for r in rad]
        self.adj = self.plane.adjacency()

    # -- kinds ------------------------------------------------------------
    def is_face(self, x: int) -> bool:
        return x >= self.n_gx

    def g_vertices(self) -> list[int]:
        return list(range(self.g.n_vertices))

    def face_vertex_of_dart(self, d: int) -> int:
        return self.n_gx + self.faces.face_of_dart[d]

    def segment_faces(self, s: int) -> tuple[int, int]:
        """The face-vertices on the two sides of G^x segment ``s``."""
        return (self.face_vertex_of_dart(2 * s), self.face_vertex_of_dart(2 * s + 1))

    # -- distances --------------------------------------------------------
    def radial_distances(self, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
        return bfs(self.radial_adj, sources, limit)

    def lambda_distances(self, sources: Iterable[int], limit: int | None = None,
                         allowed=None) -> dict[int, int]:
        return bfs(self.adj, sources, limit, allowed)

    def to_dot(self) -> str:
        out = ["graph lambda {"]
        for x in range(self.n):
            out.append(f'  {x} [kind="{self.kind[x]}"];')
        for a, b in self.ends:
            out.append(f"  {a} -- {b};")
        out.append("}")
        return "\n".join(out) + "\n"


def build_lambda(g: EmbeddedGraph) -> RadialPlanarization:
    lam = g._cache.get("lambda")
    if lam is None:
        lam = RadialPlanarization(g)
        g._cache["lambda"] = lam
    return lam


def face_distance(lam: RadialPlanarization, u: int, targets: Iterable[int]) -> dict[int, int]:
    """d_F(u, t) for every reachable target (absent = unreachable)."""
    targets = list(targets)
    for x in [u, *targets]:
        if not 0 <= x < lam.n_gx:
            raise PreconditionError(f"vertex {x} is not a G^x vertex")
    dist = lam.radial_distances([u])
    return {t: dist[t] // 2 for t in targets if t in dist}


@dataclass(frozen=True)
class Ball:
    center: frozenset[int]
    radius: int
    lambda_ball: frozenset[int]
    restricted_ball: frozenset[int]


def ball(lam: RadialPlanarization, S: Iterable[int], r: int) -> Ball:
    S = frozenset(S)
    if not S:
        raise PreconditionError("empty centre set")
    for x in S:
        if not 0 <= x < lam.n_gx:
            raise PreconditionError(f"vertex {x} is not a G^x vertex")
    dist = lam.radial_distances(S, limit=2 * r)
    lb = set()
    rb = set()
    for x, d in dist.items():
        if lam.is_face(x):
            if d <= 2 * r - 1:
                lb.add(x)
        else:
            lb.add(x)
            rb.add(x)
    return Ball(S, r, frozenset(lb), frozenset(rb))


def boundary(lam: RadialPlanarization, S: Iterable[int], r: int) -> list[int]:
    """Segments of G^x with exactly one adjacent face-vertex in Lambda(S, r)."""
    lb = ball(lam, S, r).lambda_ball
    out = []
    for s in range(lam.n_segments):
        f1, f2 = lam.segment_faces(s)
        if (f1 in lb) != (f2 in lb):
            out.append(s)
    return out
