"""BFS layering of Lambda(G) and the window graphs built from it.

Layer ``V_j`` holds the vertices at Lambda-distance ``j-1`` from G-vertex 0.
Slice ``i`` keeps layers ``V_{i-1} .. V_{i+w+1}`` as they are; the vertices
that may be labelled X are those of the middle layers ``V_i .. V_{i+w}``.
Everything further out is contracted: each connected component of the
graph induced by layers ``<= i-2`` (resp. ``>= i+w+2``) becomes one apex
vertex, adjacent to the window neighbours of its members.  Contraction is
done on the rotation system, so a slice is again a plane graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph import EmbeddedGraph
from .plane import PlaneGraph, bfs
from .radial import REAL, RadialPlanarization

A, X, B = "A", "X", "B"


@dataclass(frozen=True)
class Layering:
    source: int
    layer: tuple[int, ...]  # 0 for unreachable vertices
    d: int

    def members(self, j: int) -> list[int]:
        return [x for x, l in enumerate(self.layer) if l == j]


def bfs_layering(lam: RadialPlanarization, source: int = 0) -> Layering:
    dist = bfs(lam.adj, [source])  # adjacency lists are sorted by id
    layer = [0] * lam.n
    for x, dx in dist.items():
        layer[x] = dx + 1
    return Layering(source, tuple(layer), max(layer))


@dataclass
class Slice:
    i: int
    w: int
    plane: PlaneGraph
    to_global: list[int]  # local id -> Lambda id, -1 for apexes
    apex_members: dict[int, frozenset[int]]
    layer_tag: list[int]
    middle: frozenset[int]  # local ids in layers i..i+w
    center: int
    kind: list[str]  # REAL / DUMMY / FACE / "apex"
    has_real: list[bool]  # vertex is, or contains, a real vertex
    from_global: dict[int, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.plane.n

    @property
    def apexes(self) -> list[int]:
        return sorted(self.apex_members)

    def local_of(self, x: int) -> int:
        return self.from_global[x]

    def eccentricity(self, x: int | None = None) -> int:
        x = self.center if x is None else x
        dist = bfs(self.plane.adjacency(), [x])
        return max(dist.values())


def _components(adj, verts: set[int]) -> list[list[int]]:
    comps = []
    seen: set[int] = set()
    for s in sorted(verts):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        dq = deque([s])
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if y in verts and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    dq.append(y)
        comps.append(sorted(comp))
    return comps


def _contract_rotation(lam: RadialPlanarization, comp: list[int], cset: set[int]) -> list[int]:
    """Clockwise order of Lambda edges leaving ``comp`` once it is contracted.

    Walks around a BFS spanning tree of the component; non-tree edges inside
    the component turn into loops under contraction and are skipped.
    """
    P = lam.plane
    root = comp[0]
    tree: set[int] = set()
    seen = {root}
    dq = deque([root])
    while dq:
        x = dq.popleft()
        for d in P.rot[x]:
            y = P.head(d)
            if y in cset and y not in seen:
                seen.add(y)
                tree.add(d >> 1)
                dq.append(y)
    if not P.rot[root]:
        return []
    out: list[int] = []
    start = P.rot[root][0]
    d = start
    while True:
        e = d >> 1
        y = P.head(d)
        if e in tree:
            # step over the tree edge, continue after it at the far end
            r = P.rot[y]
            d = r[(P.pos[d ^ 1] + 1) % len(r)]
        else:
            if y not in cset:
                out.append(e)
            x = P.tail(d)
            r = P.rot[x]
            d = r[(P.pos[d] + 1) % len(r)]
        if d == start:
            break
    return out


def build_slice(lam: RadialPlanarization, layering: Layering, i: int, w: int) -> Slice:
    d = layering.d
    if not 1 <= i <= d:
        raise PreconditionError(f"window start {i} outside 1..{d}")
    lay = layering.layer
    lo, hi = i - 1, i + w + 1
    core = [x for x in range(lam.n) if lay[x] and lo <= lay[x] <= hi]
    lower = {x for x in range(lam.n) if lay[x] and lay[x] < lo}
    upper = {x for x in range(lam.n) if lay[x] > hi}
    apex_comps = _components(lam.adj, lower) + _components(lam.adj, upper)
    apex_comps.sort(key=lambda c: c[0])
    from_global = {x: k for k, x in enumerate(core)}
    to_global = list(core) + [-1] * len(apex_comps)
    owner: dict[int, int] = {}
    apex_members: dict[int, frozenset[int]] = {}
    layer_tag = [lay[x] for x in core]
    kind = [lam.kind[x] for x in core]
    has_real = [lam.kind[x] == REAL for x in core]
    for k, comp in enumerate(apex_comps):
        a = len(core) + k
        apex_members[a] = frozenset(comp)
        for x in comp:
            owner[x] = a
        layer_tag.append(lo if lay[comp[0]] < lo else hi)
        kind.append("apex")
        has_real.append(any(lam.kind[x] == REAL for x in comp))

    def loc(x: int) -> int:
        return from_global[x] if x in from_global else owner[x]

    P = lam.plane
    ends: list[tuple[int, int]] = []
    edge_map: dict[int, int] = {}
    for e, (a, b) in enumerate(P.ends):
        if (a in from_global and (b in from_global or b in owner)) or \
                (b in from_global and a in owner):
            edge_map[e] = len(ends)
            ends.append((loc(a), loc(b)))
    rotation: list[list[int]] = []
    for x in core:
        rotation.append([edge_map[d >> 1] for d in P.rot[x] if (d >> 1) in edge_map])
    for comp in apex_comps:
        cset = set(comp)
        rotation.append([edge_map[e] for e in _contract_rotation(lam, comp, cset)
                         if e in edge_map])
    plane = PlaneGraph(len(to_global), ends, rotation)
    middle = frozenset(k for k, x in enumerate(core) if i <= lay[x] <= i + w)
    lower_apex = [a for a, m in apex_members.items() if lay[min(m)] < lo]
    if lower_apex:
        center = lower_apex[0]
    else:
        center = from_global[layering.source]
    return Slice(i, w, plane, to_global, apex_members, layer_tag, middle, center,
                 kind, has_real, from_global)


def window_starts(layering: Layering, w: int) -> range:
    """Window starts that cover every run of ``w+1`` consecutive layers."""
    return range(1, max(1, layering.d - w) + 1)


# ---------------------------------------------------------------------------
# transition-point augmentation

@dataclass
class AugmentedSlice:
    base: Slice
    extra_edges: set[tuple[int, int]]
    transition: dict[int, list[int]]  # parent edge id -> z_1..z_2q (local ids)
    partners: dict[int, set[int]]  # local vertex -> its transition partners

    def adjacency(self) -> list[set[int]]:
        adj = [set(s) for s in self.base.plane.adjacency()]
        for a, b in self.extra_edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edges(self) -> set[tuple[int, int]]:
        out = set(self.extra_edges)
        for a, b in self.base.plane.ends:
            if a != b:
                out.add((min(a, b), max(a, b)))
        return out


def augment_slice(sl: Slice, g: EmbeddedGraph) -> AugmentedSlice:
    extra: set[tuple[int, int]] = set()
    transition: dict[int, list[int]] = {}
    partners: dict[int, set[int]] = {}
    fg = sl.from_global
    for e in g.edges:
        runs: list[list[int]] = []
        cur: list[int] = []
        for x in e.walk:
            if x in fg:
                cur.append(fg[x])
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        if not runs:
            continue
        tp: list[int] = []
        for run in runs:
            a, b = run[0], run[-1]
            tp += [a, b]
            if a != b:
                extra.add((min(a, b), max(a, b)))
            for z in run[1:-1]:
                for t in (a, b):
                    if t != z:
                        extra.add((min(z, t), max(z, t)))
                        partners.setdefault(z, set()).add(t)
        transition[e.id] = tp
    return AugmentedSlice(sl, extra, transition, partners)


# ---------------------------------------------------------------------------

def extend_triple(lam: RadialPlanarization, sl: Slice, labeling: dict[int, str] | list[str]) -> list[str]:
    """Lift a slice labeling to all of Lambda (apex members inherit)."""
    lab = labeling if isinstance(labeling, dict) else dict(enumerate(labeling))
    for v in range(sl.n):
        if v not in lab:
            raise PreconditionError(f"slice vertex {v} is unlabelled")
        if lab[v] == X and v not in sl.middle:
            where = "apex" if v in sl.apex_members else f"Lambda vertex {sl.to_global[v]}"
            raise PreconditionError(f"X outside the middle layers at slice vertex {v} ({where})")
    out = [A] * lam.n
    for v, x in enumerate(sl.to_global):
        if x >= 0:
            out[x] = lab[v]
    for a, mem in sl.apex_members.items():
        for x in mem:
            out[x] = lab[a]
    return out
