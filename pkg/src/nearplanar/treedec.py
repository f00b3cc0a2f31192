"""Tree decompositions for slices.

Two constructions are offered.  The bounded-radius one fans every face of
a plane graph into triangles, takes a BFS tree from a centre and gives each
triangle the union of its corners' tree paths as bag; the decomposition
tree is formed by the dual edges of primal edges outside the BFS tree.
The heuristic one eliminates vertices in min-fill order.
"""
from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Sequence

from .errors import PreconditionError
from .plane import PlaneGraph


class TreeDecomposition:
    def __init__(self, bags: Sequence[Iterable[int]], parent: Sequence[int], subject: str = ""):
        self.bags: list[frozenset[int]] = [frozenset(b) for b in bags]
        self.parent: list[int] = list(parent)
        self.subject = subject
        self.children: list[list[int]] = [[] for _ in self.bags]
        self.root = -1
        for i, p in enumerate(self.parent):
            if p < 0:
                if self.root >= 0:
                    raise ValueError("more than one root")
                self.root = i
            else:
                self.children[p].append(i)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def postorder(self) -> list[int]:
        order: list[int] = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                order.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children[x]):
                stack.append((c, False))
        return order

    def to_pace(self, n_vertices: int) -> str:
        out = [f"s td {len(self.bags)} {self.width + 1} {n_vertices}"]
        for i, b in enumerate(self.bags):
            out.append(f"b {i + 1}" + "".join(f" {v + 1}" for v in sorted(b)))
        for i, p in enumerate(self.parent):
            if p >= 0:
                out.append(f"{p + 1} {i + 1}")
        return "\n".join(out) + "\n"


def validate_td(td: TreeDecomposition, n_vertices: int,
                edges: Iterable[tuple[int, int]]) -> bool:
    """T1-T3 plus the shape of the tree (single root, every node reaches it)."""
    k = len(td.bags)
    if k == 0:
        return n_vertices == 0
    if td.root < 0 or len(td.parent) != k:
        return False
    seen = [False] * k
    dq = deque([td.root])
    seen[td.root] = True
    while dq:
        x = dq.popleft()
        for c in td.children[x]:
            if seen[c]:
                return False
            seen[c] = True
            dq.append(c)
    if not all(seen):
        return False
    where: dict[int, list[int]] = {}
    for i, b in enumerate(td.bags):
        for v in b:
            where.setdefault(v, []).append(i)
    if any(v not in where for v in range(n_vertices)):
        return False
    for a, b in edges:
        if a == b:
            continue
        if len(where[a]) > len(where[b]):
            a, b = b, a
        if not any(b in td.bags[i] for i in where[a]):
            return False
    for v, nodes in where.items():
        # nodes holding v are connected iff exactly one of them has its
        # parent outside the set
        s = set(nodes)
        tops = sum(1 for i in nodes if td.parent[i] < 0 or td.parent[i] not in s)
        if tops != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# bounded-radius construction

def build_td_bounded_radius(plane: PlaneGraph, center: int) -> TreeDecomposition:
    n = plane.n
    adj = plane.adjacency()
    parent = [-1] * n
    depth = [-1] * n
    tree_edge: set[int] = set()
    depth[center] = 0
    dq = deque([center])
    while dq:
        x = dq.popleft()
        for d in plane.rot[x]:
            y = plane.head(d)
            if depth[y] < 0:
                depth[y] = depth[x] + 1
                parent[y] = x
                tree_edge.add(d >> 1)
                dq.append(y)
    if any(dd < 0 for dd in depth):
        raise PreconditionError("slice is disconnected")
    if not plane.ends:
        return TreeDecomposition([range(n)], [-1], "slice")

    def path(x: int) -> list[int]:
        out = []
        while x >= 0:
            out.append(x)
            x = parent[x]
        return out

    pieces: list[tuple[int, ...]] = []  # corners of each triangle / small face
    piece_of_dart: dict[int, int] = {}
    dual: list[tuple[int, int]] = []
    for walk in plane.face_walks():
        corners = [plane.tail(t) for t in walk]
        k = len(walk)
        m = min(range(k), key=lambda j: (corners[j], j))
        walk = walk[m:] + walk[:m]
        corners = corners[m:] + corners[:m]
        if k <= 3:
            pid = len(pieces)
            pieces.append(tuple(corners))
            for t in walk:
                piece_of_dart[t] = pid
            continue
        first = len(pieces)
        for j in range(1, k - 1):
            pieces.append((corners[0], corners[j], corners[j + 1]))
        piece_of_dart[walk[0]] = first
        for j in range(1, k - 1):
            piece_of_dart[walk[j]] = first + j - 1
        piece_of_dart[walk[k - 1]] = first + k - 3
        for j in range(k - 3):
            dual.append((first + j, first + j + 1))  # across a fan diagonal
    for e in range(len(plane.ends)):
        if e not in tree_edge:
            dual.append((piece_of_dart[2 * e], piece_of_dart[2 * e + 1]))
    P = len(pieces)
    bags = []
    for corners in pieces:
        b: set[int] = set()
        for c in set(corners):
            b.update(path(c))
        bags.append(b)
    dadj: list[list[int]] = [[] for _ in range(P)]
    for a, b in dual:
        dadj[a].append(b)
        dadj[b].append(a)
    root = next((p for p, c in enumerate(pieces) if center in c), 0)
    tparent = [-2] * P
    tparent[root] = -1
    dq = deque([root])
    while dq:
        x = dq.popleft()
        for y in dadj[x]:
            if tparent[y] == -2:
                tparent[y] = x
                dq.append(y)
    if any(p == -2 for p in tparent) or len(dual) != P - 1:
        raise PreconditionError("rotation system is not plane")
    return TreeDecomposition(bags, tparent, "slice")


# ---------------------------------------------------------------------------
# min-fill heuristic

def build_td_heuristic(adj: Sequence[Iterable[int]], method: str = "min-fill") -> TreeDecomposition:
    """Greedy elimination ordering, ``min-fill`` or ``min-degree``."""
    if method not in ("min-fill", "min-degree"):
        raise ValueError(f"unknown elimination heuristic {method!r}")
    n = len(adj)
    if n == 0:
        return TreeDecomposition([], [])
    nb: list[set[int]] = [set(a) - {i} for i, a in enumerate(adj)]

    def fill(v: int) -> int:
        ns = list(nb[v])
        c = 0
        for i in range(len(ns)):
            si = nb[ns[i]]
            for j in range(i + 1, len(ns)):
                if ns[j] not in si:
                    c += 1
        return c

    def score(v: int) -> tuple[int, int]:
        if method == "min-degree":
            return (len(nb[v]), 0)
        return (fill(v), len(nb[v]))

    current = {v: score(v) for v in range(n)}
    heap = [(*current[v], v) for v in range(n)]
    heapq.heapify(heap)
    alive = [True] * n
    order: list[int] = []
    bag_of: dict[int, frozenset[int]] = {}
    while heap:
        f, dg, v = heapq.heappop(heap)
        if not alive[v] or current[v] != (f, dg):
            continue
        alive[v] = False
        order.append(v)
        ns = nb[v]
        bag_of[v] = frozenset(ns | {v})
        for a in ns:
            nb[a].discard(v)
            nb[a] |= ns - {a}
        touched = set(ns)
        if method == "min-fill":
            for a in ns:
                touched |= nb[a]
        for u in touched:
            if alive[u]:
                key = score(u)
                if key != current[u]:
                    current[u] = key
                    heapq.heappush(heap, (key[0], key[1], u))
    pos = {v: i for i, v in enumerate(order)}
    parent_v: dict[int, int] = {}
    for v in order:
        later = [u for u in bag_of[v] if u != v]
        if later:
            parent_v[v] = min(later, key=lambda u: pos[u])
    # roots of several components hang below the last root
    roots = [v for v in order if v not in parent_v]
    for r in roots[:-1]:
        parent_v[r] = roots[-1]
    idx = {v: i for i, v in enumerate(order)}
    bags = [bag_of[v] for v in order]
    parent = [idx[parent_v[v]] if v in parent_v else -1 for v in order]
    return compress(TreeDecomposition(bags, parent, method))


def compress(td: TreeDecomposition) -> TreeDecomposition:
    """Merge every node whose bag is contained in its parent's bag."""
    k = len(td.bags)
    bags = td.bags
    parent = list(td.parent)
    children = [list(c) for c in td.children]
    alive = [True] * k
    for x in td.postorder():
        p = parent[x]
        if p >= 0 and bags[x] <= bags[p]:
            alive[x] = False
            children[p].remove(x)
            for c in children[x]:
                parent[c] = p
                children[p].append(c)
    keep = [i for i in range(k) if alive[i]]
    newid = {old: i for i, old in enumerate(keep)}
    return TreeDecomposition([bags[i] for i in keep],
                             [newid[parent[i]] if parent[i] >= 0 else -1 for i in keep],
                             td.subject)


# ---------------------------------------------------------------------------

def augment_td(td: TreeDecomposition, partners: dict[int, set[int]]) -> TreeDecomposition:
    bags = []
    for b in td.bags:
        nb = set(b)
        for z in b:
            nb |= partners.get(z, set())
        bags.append(nb)
    return TreeDecomposition(bags, td.parent, td.subject + "+")


def restrict_td(td: TreeDecomposition, keep: Iterable[int]) -> TreeDecomposition:
    """Intersect every bag with ``keep`` and relabel to ``0..len(keep)-1``."""
    keep = sorted(keep)
    new = {v: i for i, v in enumerate(keep)}
    bags = [[new[v] for v in b if v in new] for b in td.bags]
    return compress(TreeDecomposition(bags, td.parent, td.subject + "|"))


def binarize(td: TreeDecomposition) -> TreeDecomposition:
    bags = list(td.bags)
    parent = list(td.parent)
    children = [list(c) for c in td.children]
    k = len(bags)
    for x in range(k):
        cur = x
        kids = children[x]
        while len(kids) > 2:
            # keep the first child, push the rest below a copy of the bag
            copy = len(bags)
            bags.append(bags[x])
            parent.append(cur)
            rest = kids[1:]
            for c in rest:
                parent[c] = copy
            children[cur] = [kids[0], copy]
            children.append(rest)
            cur = copy
            kids = rest
    return TreeDecomposition(bags, parent, td.subject)
