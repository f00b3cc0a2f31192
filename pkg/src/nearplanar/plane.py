"""A minimal plane multigraph given by edge list and clockwise rotation.

Used for the radial planarization and for slices.  Edge ``e`` joins
``ends[e] = (a, b)``; dart ``2e`` leaves ``a``, dart ``2e+1`` leaves ``b``.
Loops are not allowed.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


class PlaneGraph:
    def __init__(self, n: int, ends: Sequence[tuple[int, int]],
                 rotation: Sequence[Sequence[int]]):
        """``rotation[x]`` lists edge ids incident to ``x`` clockwise."""
        self.n = n
        self.ends: list[tuple[int, int]] = [tuple(e) for e in ends]
        self.rot: list[list[int]] = []
        self.pos: dict[int, int] = {}
        for x in range(n):
            darts = []
            for e in rotation[x]:
                a, b = self.ends[e]
                d = 2 * e if a == x else 2 * e + 1
                self.pos[d] = len(darts)
                darts.append(d)
            self.rot.append(darts)
        self._adj: list[list[int]] | None = None

    def tail(self, d: int) -> int:
        a, b = self.ends[d >> 1]
        return b if d & 1 else a

    def head(self, d: int) -> int:
        a, b = self.ends[d >> 1]
        return a if d & 1 else b

    def adjacency(self) -> list[list[int]]:
        """Sorted, deduplicated neighbour lists."""
        if self._adj is None:
            nb: list[set[int]] = [set() for _ in range(self.n)]
            for a, b in self.ends:
                nb[a].add(b)
                nb[b].add(a)
            self._adj = [sorted(s) for s in nb]
        return self._adj

    def face_successor(self, d: int) -> int:
        h = self.head(d)
        r = self.rot[h]
        return r[(self.pos[d ^ 1] + 1) % len(r)]

    def face_walks(self) -> list[list[int]]:
        seen = [False] * (2 * len(self.ends))
        walks = []
        for d0 in range(2 * len(self.ends)):
            if seen[d0]:
                continue
            w = []
            d = d0
            while not seen[d]:
                seen[d] = True
                w.append(d)
                d = self.face_successor(d)
            walks.append(w)
        return walks

    def components(self) -> int:
        comp = [-1] * self.n
        adj = self.adjacency()
        c = 0
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = c
            dq = deque([s])
            while dq:
                x = dq.popleft()
                for y in adj[x]:
                    if comp[y] < 0:
                        comp[y] = c
                        dq.append(y)
            c += 1
        return c

    def euler_ok(self) -> bool:
        """Every component of the rotation system has genus zero."""
        if self.n == 0:
            return True
        isolated = sum(1 for x in range(self.n) if not self.rot[x])
        f = len(self.face_walks()) + isolated
        return self.n - len(self.ends) + f == 2 * self.components()


def bfs(adj: Sequence[Sequence[int]], sources: Iterable[int],
        limit: int | None = None, allowed=None) -> dict[int, int]:
    """Hop distances from ``sources``; optional depth ``limit`` and vertex filter."""
    dist: dict[int, int] = {}
    dq: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            dq.append(s)
    while dq:
        x = dq.popleft()
        dx = dist[x]
        if limit is not None and dx >= limit:
            continue
        for y in adj[x]:
            if y not in dist and (allowed is None or y in allowed):
                dist[y] = dx + 1
                dq.append(y)
    return dist
