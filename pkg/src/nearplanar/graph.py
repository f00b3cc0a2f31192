"""Embedded graphs given by a planarization with a rotation system.

A drawing of a graph G is stored as its planarization G^x: every crossing
point becomes a dummy vertex of degree four and every edge of G becomes a
walk (its *parent-edge walk*) through the dummies it crosses.  Real vertices
have ids ``0..n-1`` and dummies ``n..n+q-1``.

Segments and darts
------------------
Segment ``i`` of edge ``e`` joins walk vertex ``i`` to walk vertex ``i+1``.
Internally every segment gets a global index ``s`` and two darts, ``2s``
(walk direction) and ``2s+1`` (reverse).  The rotation at a vertex is the
clockwise cyclic list of darts leaving it.  The face successor of a dart
``d`` is the rotation successor of ``reverse(d)`` at the head of ``d``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EGFParseError, ValidationError

SegRef = tuple[int, int]  # (edge id, segment index)


@dataclass(frozen=True)
class ParentEdge:
    id: int
    u: int
    v: int
    interior: tuple[int, ...] = ()

    @property
    def walk(self) -> tuple[int, ...]:
        return (self.u, *self.interior, self.v)

    @property
    def n_segments(self) -> int:
        return len(self.interior) + 1


@dataclass
class ValidationReport:
    issues: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FaceSet:
    walks: tuple[tuple[int, ...], ...]  # darts in traversal order
    face_of_dart: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.walks)


class EmbeddedGraph:
    """Planarization G^x with parent-edge walks and a clockwise rotation."""

    def __init__(self, n_vertices: int, n_crossings: int,
                 edges: Iterable[ParentEdge],
                 rotation: Sequence[Sequence[SegRef]]):
        self.n_vertices = n_vertices
        self.n_crossings = n_crossings
        self.edges: tuple[ParentEdge, ...] = tuple(sorted(edges, key=lambda e: e.id))
        rot = [tuple(tuple(x) for x in r) for r in rotation]
        rot += [()] * (self.n_total - len(rot))
        self.rotation: tuple[tuple[SegRef, ...], ...] = tuple(rot)
        self._edge_by_id = {e.id: e for e in self.edges}
        self._cache: dict = {}
        self.meta: dict = {}  # generator annotations, not part of the format

    # -- basic accessors -------------------------------------------------
    @property
    def n_total(self) -> int:
        return self.n_vertices + self.n_crossings

    def is_dummy(self, x: int) -> bool:
        return self.n_vertices <= x < self.n_total

    def edge(self, eid: int) -> ParentEdge:
        return self._edge_by_id[eid]

    def has_edge(self, eid: int) -> bool:
        return eid in self._edge_by_id

    @property
    def edge_ids(self) -> list[int]:
        return [e.id for e in self.edges]

    def crossing_edges(self, d: int) -> tuple[int, int]:
        """The two parent edges crossing at dummy ``d`` (sorted ids)."""
        return self._index()["crossing"][d]

    def __repr__(self) -> str:
        return (f"EmbeddedGraph(n={self.n_vertices}, q={self.n_crossings}, "
                f"m={len(self.edges)})")

    # -- dart index (requires structural validity) -----------------------
    def _index(self) -> dict:
        idx = self._cache.get("index")
        if idx is not None:
            return idx
        seg_ends: list[tuple[int, int]] = []
        seg_key: list[SegRef] = []
        seg_of: dict[SegRef, int] = {}
        for e in self.edges:
            w = e.walk
            for i in range(e.n_segments):
                seg_of[(e.id, i)] = len(seg_ends)
                seg_key.append((e.id, i))
                seg_ends.append((w[i], w[i + 1]))
        pos = [0] * (2 * len(seg_ends))
        rot_darts: list[list[int]] = []
        for x, r in enumerate(self.rotation):
            darts = []
            for ref in r:
                s = seg_of[ref]
                a, b = seg_ends[s]
                d = 2 * s if a == x else 2 * s + 1
                pos[d] = len(darts)
                darts.append(d)
            rot_darts.append(darts)
        crossing: dict[int, tuple[int, int]] = {}
        for e in self.edges:
            for z in e.interior:
                crossing.setdefault(z, ())
                crossing[z] = tuple(sorted(crossing[z] + (e.id,)))
        idx = {"seg_ends": seg_ends, "seg_key": seg_key, "seg_of": seg_of,
               "rot": rot_darts, "pos": pos, "crossing": crossing}
        self._cache["index"] = idx
        return idx

    @property
    def n_segments(self) -> int:
        return sum(e.n_segments for e in self.edges)

    def segments(self) -> list[tuple[int, int]]:
        """Endpoints of every G^x segment, indexed by global segment id."""
        return self._index()["seg_ends"]

    def segment_key(self, s: int) -> SegRef:
        return self._index()["seg_key"][s]

    def segment_id(self, eid: int, i: int) -> int:
        return self._index()["seg_of"][(eid, i)]

    def tail(self, d: int) -> int:
        a, b = self._index()["seg_ends"][d >> 1]
        return b if d & 1 else a

    def head(self, d: int) -> int:
        a, b = self._index()["seg_ends"][d >> 1]
        return a if d & 1 else b

    def darts_at(self, x: int) -> list[int]:
        return self._index()["rot"][x]

    def face_successor(self, d: int) -> int:
        idx = self._index()
        r = d ^ 1
        h = self.head(d)
        rot = idx["rot"][h]
        return rot[(idx["pos"][r] + 1) % len(rot)]

    def neighbors(self, x: int) -> list[int]:
        """G^x neighbours of ``x`` in rotation order (with multiplicity)."""
        return [self.head(d) for d in self.darts_at(x)]


# ---------------------------------------------------------------------------
# validation

def validate(g: EmbeddedGraph) -> ValidationReport:
    issues: list[str] = []
    n, N = g.n_vertices, g.n_total
    if n < 0 or g.n_crossings < 0:
        return ValidationReport(["negative vertex count"])
    incident: list[list[SegRef]] = [[] for _ in range(N)]
    on_edges: dict[int, list[int]] = {z: [] for z in range(n, N)}
    structural_ok = True
    for e in g.edges:
        w = e.walk
        if not all(0 <= x < N for x in w):
            issues.append(f"edge {e.id}: vertex id out of range")
            structural_ok = False
            continue
        for x in (e.u, e.v):
            if x >= n:
                issues.append(f"edge {e.id}: endpoint {x} is not a real vertex")
        if e.u == e.v:
            issues.append(f"self-loop on edge {e.id}")
        for z in e.interior:
            if z < n:
                issues.append(f"edge {e.id}: interior vertex {z} is not a dummy")
        seen: set[int] = set()
        for z in e.interior:
            if z in seen:
                issues.append(f"self-crossing edge {e.id} at vertex {z}")
            seen.add(z)
            if z in on_edges:
                on_edges[z].append(e.id)
        for i in range(e.n_segments):
            incident[w[i]].append((e.id, i))
            incident[w[i + 1]].append((e.id, i))
    for z in range(n, N):
        eids = on_edges[z]
        if len(eids) != 2 or eids[0] == eids[1]:
            issues.append(f"dummy {z} lies on {len(eids)} parent-edge walks "
                          f"(need 2 distinct)")
        deg = len(incident[z])
        if deg != 4:
            issues.append(f"dummy degree ≠ 4: vertex {z} has degree {deg}")

    rot_ok = structural_ok
    for x in range(N):
        r = g.rotation[x] if x < len(g.rotation) else ()
        want = sorted(incident[x])
        got = sorted(tuple(t) for t in r)
        if got != want:
            rot_ok = False
            if len(set(got)) != len(got):
                issues.append(f"rotation at vertex {x}: dart listed twice")
            missing = set(want) - set(got)
            extra = set(got) - set(want)
            if missing:
                m = ", ".join(f"{a}.{b}" for a, b in sorted(missing))
                issues.append(f"rotation at vertex {x}: missing dart {m}")
            if extra:
                m = ", ".join(f"{a}.{b}" for a, b in sorted(extra))
                issues.append(f"rotation at vertex {x}: foreign dart {m}")
    if any(e.u == e.v for e in g.edges):
        rot_ok = False
    if rot_ok:
        for z in range(n, N):
            r = g.rotation[z]
            if len(r) == 4:
                es = [t[0] for t in r]
                if not (es[0] == es[2] and es[1] == es[3] and es[0] != es[1]):
                    issues.append(f"non-transversal crossing at vertex {z}")

    # connectivity of G^x
    if N > 0 and structural_ok:
        adj: list[list[int]] = [[] for _ in range(N)]
        for e in g.edges:
            w = e.walk
            for i in range(e.n_segments):
                adj[w[i]].append(w[i + 1])
                adj[w[i + 1]].append(w[i])
        seen = [False] * N
        seen[0] = True
        dq = deque([0])
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    dq.append(y)
        connected = all(seen)
        if not connected:
            issues.append("G^× disconnected")
        if rot_ok and connected:
            f = len(faces(g))
            chi = N - g.n_segments + f
            if chi != 2:
                issues.append(f"Euler formula violated: V − E + F = {chi}")
    elif N == 0:
        issues.append("empty graph")
    return ValidationReport(issues)


def check(g: EmbeddedGraph) -> EmbeddedGraph:
    rep = validate(g)
    if not rep.ok:
        raise ValidationError(rep.issues)
    return g


# ---------------------------------------------------------------------------
# faces

def faces(g: EmbeddedGraph) -> FaceSet:
    cached = g._cache.get("faces")
    if cached is not None:
        return cached
    n_darts = 2 * g.n_segments
    face_of = [-1] * n_darts
    walks: list[tuple[int, ...]] = []
    for d0 in range(n_darts):
        if face_of[d0] >= 0:
            continue
        fid = len(walks)
        walk = []
        d = d0
        while face_of[d] < 0:
            face_of[d] = fid
            walk.append(d)
            d = g.face_successor(d)
        walks.append(tuple(walk))
    if n_darts == 0:
        # a lone vertex bounds a single empty face
        walks.append(())
    fs = FaceSet(tuple(walks), tuple(face_of))
    g._cache["faces"] = fs
    return fs


def face_vertices(g: EmbeddedGraph, walk: Sequence[int]) -> list[int]:
    """Tails of the darts of a face walk (with repetitions)."""
    return [g.tail(d) for d in walk]


# ---------------------------------------------------------------------------
# EGF v1

_META = re.compile(r"^#\s*([A-Za-z_][\w-]*):\s*(.*?)\s*$")


def parse_egf(text: str, check_valid: bool = True) -> EmbeddedGraph:
    """Parse an EGF v1 document.

    Syntax problems and dangling ids raise :class:`EGFParseError`; with
    ``check_valid`` set, invariant violations raise :class:`ValidationError`.
    """
    n = q = None
    edges: dict[int, tuple[ParentEdge, int]] = {}
    rots: dict[int, tuple[list[SegRef], int]] = {}
    header = False
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            # "# key: value" comments before the first directive are annotations
            m = _META.match(raw)
            if m and header and n is None and not edges:
                meta[m.group(1)] = m.group(2)
            continue
        tok = line.split()
        if not header:
            if tok != ["egf", "1"]:
                raise EGFParseError(lineno, "expected header 'egf 1'")
            header = True
            continue
        kw = tok[0]
        try:
            if kw in ("vertices", "crossings"):
                if len(tok) != 2:
                    raise EGFParseError(lineno, f"'{kw}' takes one integer")
                val = _nat(tok[1], lineno)
                if kw == "vertices":
                    if n is not None:
                        raise EGFParseError(lineno, "duplicate 'vertices' directive")
                    n = val
                else:
                    if q is not None:
                        raise EGFParseError(lineno, "duplicate 'crossings' directive")
                    q = val
            elif kw == "edge":
                if len(tok) < 5 or tok[4] != ":":
                    raise EGFParseError(lineno, "expected 'edge <eid> <u> <v> : ...'")
                eid, u, v = (_nat(t, lineno) for t in tok[1:4])
                interior = tuple(_nat(t, lineno) for t in tok[5:])
                if eid in edges:
                    raise EGFParseError(lineno, f"duplicate edge id {eid}")
                edges[eid] = (ParentEdge(eid, u, v, interior), lineno)
            elif kw == "rot":
                if len(tok) < 3 or tok[2] != ":":
                    raise EGFParseError(lineno, "expected 'rot <vid> : ...'")
                vid = _nat(tok[1], lineno)
                if vid in rots:
                    raise EGFParseError(lineno, f"duplicate rotation for vertex {vid}")
                refs = []
                for t in tok[3:]:
                    parts = t.split(".")
                    if len(parts) != 2:
                        raise EGFParseError(lineno, f"bad dart token '{t}'")
                    refs.append((_nat(parts[0], lineno), _nat(parts[1], lineno)))
                rots[vid] = (refs, lineno)
            else:
                raise EGFParseError(lineno, f"unknown directive '{kw}'")
        except ValueError:
            raise EGFParseError(lineno, "malformed integer") from None
    if not header:
        raise EGFParseError(1, "missing header 'egf 1'")
    if n is None:
        raise EGFParseError(0, "missing 'vertices' directive")
    q = q or 0
    N = n + q
    for e, ln in edges.values():
        for x in e.walk:
            if x >= N:
                raise EGFParseError(ln, f"dangling vertex id {x}")
    for vid, (refs, ln) in rots.items():
        if vid >= N:
            raise EGFParseError(ln, f"dangling vertex id {vid}")
        for eid, i in refs:
            if eid not in edges:
                raise EGFParseError(ln, f"dangling edge id {eid}")
            if i >= edges[eid][0].n_segments:
                raise EGFParseError(ln, f"dangling segment {eid}.{i}")
    rotation = [rots[x][0] if x in rots else [] for x in range(N)]
    g = EmbeddedGraph(n, q, [e for e, _ in edges.values()], rotation)
    g.meta.update(meta)
    if check_valid:
        check(g)
    return g


def _nat(tok: str, lineno: int) -> int:
    v = int(tok)
    if v < 0:
        raise EGFParseError(lineno, f"negative id {v}")
    return v


def serialize_egf(g: EmbeddedGraph) -> str:
    out = ["egf 1"]
    for k, v in sorted(g.meta.items()):
        out.append(f"# {k}: {v}")
    out += [f"vertices {g.n_vertices}", f"crossings {g.n_crossings}"]
    for e in g.edges:
        tail = "".join(f" {z}" for z in e.interior)
        out.append(f"edge {e.id} {e.u} {e.v} :{tail}")
    for x, r in enumerate(g.rotation):
        out.append(f"rot {x} :" + "".join(f" {a}.{b}" for a, b in r))
    return "\n".join(out) + "\n"


def read_egf(path, check_valid: bool = True) -> EmbeddedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_egf(fh.read(), check_valid=check_valid)


# ---------------------------------------------------------------------------
# subdivision

@dataclass(frozen=True)
class SubdividedGraph:
    graph: EmbeddedGraph
    subdivision: dict[int, int]  # subdivision vertex -> parent edge id of G
    edge_parent: dict[int, int]  # edge id of G~ -> edge id of G
    vertex_origin: dict[int, int]  # non-subdivision vertex of G~ -> vertex of G

    @property
    def d_vertices(self) -> list[int]:
        return sorted(self.subdivision)


def subdivide(g: EmbeddedGraph) -> SubdividedGraph:
    """Subdivide every edge once, next to its lower-id endpoint."""
    n, m = g.n_vertices, len(g.edges)
    shift = m  # dummies move up by m ids

    def relabel(x: int) -> int:
        return x + shift if x >= n else x

    new_edges: list[ParentEdge] = []
    subdivision: dict[int, int] = {}
    edge_parent: dict[int, int] = {}
    # (old eid, old seg) at old vertex x -> new SegRef
    remap: dict[tuple[int, int, int], SegRef] = {}
    extra_rot: dict[int, list[SegRef]] = {}
    for j, e in enumerate(g.edges):
        t = n + j
        subdivision[t] = e.id
        short_id, long_id = 2 * j, 2 * j + 1
        edge_parent[short_id] = e.id
        edge_parent[long_id] = e.id
        interior = tuple(relabel(z) for z in e.interior)
        k = e.n_segments
        if e.u < e.v:
            a, b = e.u, e.v
            new_edges.append(ParentEdge(short_id, a, t, ()))
            new_edges.append(ParentEdge(long_id, t, b, interior))
            remap[(e.id, 0, a)] = (short_id, 0)
            for i in range(k):
                for x in (e.walk[i], e.walk[i + 1]):
                    if (e.id, i, x) not in remap:
                        remap[(e.id, i, x)] = (long_id, i)
            extra_rot[t] = [(short_id, 0), (long_id, 0)]
        else:
            a, b = e.v, e.u
            new_edges.append(ParentEdge(long_id, b, t, interior))
            new_edges.append(ParentEdge(short_id, t, a, ()))
            remap[(e.id, k - 1, a)] = (short_id, 0)
            for i in range(k):
                for x in (e.walk[i], e.walk[i + 1]):
                    if (e.id, i, x) not in remap:
                        remap[(e.id, i, x)] = (long_id, i)
            extra_rot[t] = [(long_id, k - 1), (short_id, 0)]
    total = n + m + g.n_crossings
    rotation: list[list[SegRef]] = [[] for _ in range(total)]
    for x, r in enumerate(g.rotation):
        rotation[relabel(x)] = [remap[(eid, i, x)] for eid, i in r]
    for t, r in extra_rot.items():
        rotation[t] = r
    gt = EmbeddedGraph(n + m, g.n_crossings, new_edges, rotation)
    origin = {x: x for x in range(n)}
    origin.update({x + shift: x for x in range(n, g.n_total)})
    return SubdividedGraph(gt, subdivision, edge_parent, origin)


# ---------------------------------------------------------------------------
# abstract graph view

@dataclass(frozen=True)
class AbstractGraph:
    """Multigraph on ``0..n-1``; edges carry the ids of their parent edges."""

    n: int
    edges: tuple[tuple[int, int, int], ...]  # (eid, u, v)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, u, v in self.edges:
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    def neighbor_sets(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for _, u, v in self.edges:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        return nb

    def min_degree(self) -> int:
        deg = [0] * self.n
        for _, u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return min(deg) if deg else 0

    def is_complete(self) -> bool:
        nb = self.neighbor_sets()
        return all(len(s) == self.n - 1 for s in nb)


def simple_graph_view(g: EmbeddedGraph) -> AbstractGraph:
    return AbstractGraph(g.n_vertices, tuple((e.id, e.u, e.v) for e in g.edges))


def is_connected_after_removal(ag: AbstractGraph, vertices: Iterable[int] = (),
                               edges: Iterable[int] = ()) -> bool:
    """Whether G stays connected after deleting the given vertices/edges."""
    gone_v = set(vertices)
    gone_e = set(edges)
    alive = [x for x in range(ag.n) if x not in gone_v]
    if len(alive) <= 1:
        return True
    adj = ag.adjacency()
    seen = {alive[0]}
    dq = deque([alive[0]])
    while dq:
        x = dq.popleft()
        for y, eid in adj[x]:
            if eid in gone_e or y in gone_v or y in seen:
                continue
            seen.add(y)
            dq.append(y)
    return len(seen) == len(alive)
