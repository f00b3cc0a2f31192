"""Dynamic program over a binary tree decomposition.

Looks for a labeling ``f`` of the vertices with A, X or B such that no edge
joins A and B, X stays inside the allowed set, at most ``s`` counted
vertices are X, and both A and B contain a vertex of the designated set.

A table entry at a node is keyed by ``(f restricted to the bag, chi_A,
chi_B)``.  Its value is the number of counted X-vertices in the whole
subtree, bag included.  With ``prune`` only the smallest value per key is
kept; without it the value is part of the key.  Labels are stored as ints: A=0, X=1, B=2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

from .errors import PreconditionError
from .slices import AugmentedSlice
from .treedec import TreeDecomposition, binarize, build_td_heuristic, restrict_td

LA, LX, LB = 0, 1, 2
NAMES = ("A", "X", "B")


def _clash(a: int, b: int) -> bool:
    return a != LX and b != LX and a != b


@dataclass
class DPResult:
    labeling: list[str] | None
    sigma: int | None
    table_sizes: list[int] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.labeling is not None


class _Problem:
    def __init__(self, n: int, adj: Sequence[Iterable[int]], s: int,
                 x_allowed: Iterable[int], counted: Iterable[int], chi: Iterable[int],
                 fixed_x: Iterable[int] = ()):
        self.n = n
        self.adj = [set(a) for a in adj]
        self.s = s
        xa = set(x_allowed)
        fx = set(fixed_x)
        self.domain: list[tuple[int, ...]] = []
        for v in range(n):
            if v in fx:
                self.domain.append((LX,))
            elif v in xa:
                self.domain.append((LA, LX, LB))
            else:
                self.domain.append((LA, LB))
        self.cost = [0] * n
        for v in counted:
            self.cost[v] = 1
        self.chi = [False] * n
        for v in chi:
            self.chi[v] = True


def _picker(idx: list[int]):
    """Fast ``lambda f: tuple(f[i] for i in idx)``."""
    if not idx:
        return lambda f: ()
    if len(idx) == 1:
        i = idx[0]
        return lambda f: (f[i],)
    return itemgetter(*idx)


def _extend(prob: _Problem, order: list[int], bagpos: dict[int, int],
            base: list[int], earlier: list[list[int]]):
    """All ways to label ``order`` (bag positions) on top of ``base``."""
    k = len(order)
    if k == 0:
        yield base
        return
    cur = list(base)
    dom = [prob.domain[v] for v in order]
    # iterative backtracking
    idx = [0] * k
    j = 0
    while j >= 0:
        if idx[j] >= len(dom[j]):
            idx[j] = 0
            j -= 1
            if j >= 0:
                idx[j] += 1
            continue
        lab = dom[j][idx[j]]
        p = bagpos[order[j]]
        ok = True
        for q in earlier[j]:
            if _clash(lab, cur[q]):
                ok = False
                break
        if not ok:
            idx[j] += 1
            continue
        cur[p] = lab
        if j == k - 1:
            yield cur
            idx[j] += 1
        else:
            j += 1


def _run(td: TreeDecomposition, prob: _Problem, prune: bool):
    bags = [sorted(b) for b in td.bags]
    for b in bags:
        for v in b:
            if not 0 <= v < prob.n:
                raise PreconditionError(f"bag vertex {v} is not a slice vertex")
    tables: list[dict] = [None] * len(bags)  # type: ignore[list-item]
    s = prob.s
    cost, chi = prob.cost, prob.chi
    for node in td.postorder():
        bag = bags[node]
        pos = {v: i for i, v in enumerate(bag)}
        kids = td.children[node]
        if len(kids) > 2:
            raise PreconditionError("tree decomposition is not binary")
        # project children onto the bag; sigma is unchanged by forgetting
        projs = []
        for c in kids:
            cb = bags[c]
            keep = [i for i, v in enumerate(cb) if v in pos]
            pick = _picker(keep)
            P: dict = {}
            for key, (sig, _) in tables[c].items():
                fk = pick(key[0])
                pk = (fk, key[1], key[2]) if prune else (fk, key[1], key[2], sig)
                old = P.get(pk)
                if old is None or sig < old[0]:
                    P[pk] = (sig, key)
            projs.append(([cb[i] for i in keep], P))
        table: dict = {}

        def emit(f_list, sig, ca, cb_, prov, fresh):
            for i in fresh:
                lab = f_list[i]
                v = bag[i]
                if lab == LX:
                    sig += cost[v]
                elif chi[v]:
                    if lab == LA:
                        ca = True
                    else:
                        cb_ = True
            if sig > s:
                return
            f = tuple(f_list)
            key = (f, ca, cb_) if prune else (f, ca, cb_, sig)
            old = table.get(key)
            if old is None or sig < old[0]:
                table[key] = (sig, prov)

        if not projs:
            order = list(bag)
            fresh = list(range(len(bag)))
            earlier = [[pos[u] for u in order[:j] if u in prob.adj[v]] for j, v in enumerate(order)]
            for f in _extend(prob, order, pos, [0] * len(bag), earlier):
                emit(f, 0, False, False, (), fresh)
        else:
            S1, P1 = projs[0]
            if len(projs) == 2:
                S2, P2 = projs[1]
            else:
                S2, P2 = [], {((), False, False) if prune else ((), False, False, 0): (0, None)}
            set1 = set(S1)
            set2 = set(S2)
            shared = [v for v in S2 if v in set1]
            sh_idx2 = [S2.index(v) for v in shared]
            sh_idx1 = [S1.index(v) for v in shared]
            sh_cost = [cost[v] for v in shared]
            only2 = [(i, v) for i, v in enumerate(S2) if v not in set1]
            rest = [v for v in bag if v not in set1 and v not in set2]
            fresh = [pos[v] for v in rest]
            cross = [(pos[a], pos[b]) for a in S1 if a not in set2
                     for _, b in only2 if b in prob.adj[a]]
            pre = [*S1, *(v for _, v in only2)]
            earlier = []
            for j, v in enumerate(rest):
                earlier.append([pos[u] for u in pre + rest[:j] if u in prob.adj[v]])
            index2: dict[tuple, list] = {}
            pick2, pick1 = _picker(sh_idx2), _picker(sh_idx1)
            for k2, val in P2.items():
                index2.setdefault(pick2(k2[0]), []).append((k2, val))
            s1pos = [pos[v] for v in S1]
            o2pos = [(i, pos[v]) for i, v in only2]
            for k1, (t1, prov1) in P1.items():
                f1 = k1[0]
                base = [0] * len(bag)
                for i, p in enumerate(s1pos):
                    base[p] = f1[i]
                fk = pick1(f1)
                # shared X-vertices are counted in both subtrees
                dup = sum(c for c, l in zip(sh_cost, fk) if l == LX)
                for k2, (t2, prov2) in index2.get(fk, ()):
                    sig = t1 + t2 - dup
                    if sig > s:
                        continue
                    f2 = k2[0]
                    b2 = list(base)
                    for i, p in o2pos:
                        b2[p] = f2[i]
                    if any(_clash(b2[a], b2[b]) for a, b in cross):
                        continue
                    ca = k1[1] or k2[1]
                    cb_ = k1[2] or k2[2]
                    prov = (prov1,) if len(projs) == 1 else (prov1, prov2)
                    for f in _extend(prob, rest, pos, b2, earlier):
                        emit(f, sig, ca, cb_, prov, fresh)
        tables[node] = table
    return bags, tables


def _backtrack(td: TreeDecomposition, bags, tables, root_key, n: int) -> list[int]:
    lab = [-1] * n
    stack = [(td.root, root_key)]
    while stack:
        node, key = stack.pop()
        f = key[0]
        for i, v in enumerate(bags[node]):
            if lab[v] >= 0 and lab[v] != f[i]:
                raise AssertionError("inconsistent provenance")
            lab[v] = f[i]
        _, prov = tables[node][key]
        for c, ck in zip(td.children[node], prov):
            stack.append((c, ck))
    return lab


def solve(td: TreeDecomposition, n: int, adj: Sequence[Iterable[int]], s: int,
          x_allowed: Iterable[int], counted: Iterable[int], chi: Iterable[int],
          fixed_x: Iterable[int] = (), prune: bool = True) -> DPResult:
    prob = _Problem(n, adj, s, x_allowed, counted, chi, fixed_x)
    if not td.bags:
        return DPResult(None, None)
    bags, tables = _run(td, prob, prune)
    best = None
    for key, (sig, _) in tables[td.root].items():
        if not (key[1] and key[2]):
            continue
        cand = (sig, key[0], key)
        if best is None or cand[:2] < best[:2]:
            best = cand
    sizes = [len(t) for t in tables]
    if best is None:
        return DPResult(None, None, sizes)
    lab = _backtrack(td, bags, tables, best[2], n)
    return DPResult([NAMES[x] for x in lab], best[0], sizes)


def slice_problem(aug: AugmentedSlice, x_eligible: Iterable[int], g_vertices: Iterable[int],
                  fix_free: bool = True):
    """Constraint data for a slice.

    ``g_vertices`` may be X only when they are in ``x_eligible`` and then cost
    one; other vertices (dummies, face-vertices) may be X for free.  Nothing
    outside the middle layers may be X.  Free X-vertices impose no
    constraint and do not feed the C1 flags, so with ``fix_free`` they are
    pinned to X, which changes neither feasibility nor the optimum.
    """
    sl = aug.base
    xe = set(x_eligible)
    gv = set(g_vertices)
    allowed = set()
    free = set()
    for v in sl.middle:
        if v in gv:
            if v in xe:
                allowed.add(v)
        else:
            allowed.add(v)
            free.add(v)
    return allowed, xe & allowed, gv, (free if fix_free else set())


def solve_slice(td_plus: TreeDecomposition, aug: AugmentedSlice, s: int,
                x_eligible: Iterable[int], g_vertices: Iterable[int],
                prune: bool = True, fix_free: bool = True) -> DPResult:
    allowed, counted, gv, fixed = slice_problem(aug, x_eligible, g_vertices, fix_free)
    return solve(td_plus, aug.base.n, aug.adjacency(), s, allowed, counted, gv, fixed, prune)


def solve_slice_reduced(aug: AugmentedSlice, s: int, x_eligible: Iterable[int],
                        g_vertices: Iterable[int], td_plus: TreeDecomposition | None = None,
                        prune: bool = True, heuristic: str | None = "min-degree",
                        ) -> tuple[DPResult, TreeDecomposition]:
    """Like :func:`solve_slice` with the pinned free vertices left out.

    They carry no constraint, so the DP runs on the rest only.  The
    decomposition is an elimination ordering of the rest (``heuristic``) or
    ``td_plus`` restricted to the rest, whichever is narrower; at least one
    must be given.  Returns the result and the decomposition used.
    """
    allowed, counted, gv, fixed = slice_problem(aug, x_eligible, g_vertices, True)
    n = aug.base.n
    keep = [v for v in range(n) if v not in fixed]
    new = {v: i for i, v in enumerate(keep)}
    full_adj = aug.adjacency()
    adj = [[new[u] for u in full_adj[v] if u in new] for v in keep]
    tds = [build_td_heuristic(adj, heuristic)] if heuristic else []
    if td_plus is not None:
        tds.append(restrict_td(td_plus, keep))
    if not tds:
        raise PreconditionError("no tree decomposition to work with")
    td = binarize(min(tds, key=lambda t: t.width))
    if not keep:
        return DPResult(None, None), td

    def sub(xs):
        return [new[v] for v in xs if v in new]

    res = solve(td, len(keep), adj, s, sub(allowed), sub(counted), sub(gv), (), prune)
    if res.labeling is None:
        return res, td
    lab = [NAMES[LX]] * n
    for v, l in zip(keep, res.labeling):
        lab[v] = l
    return DPResult(lab, res.sigma, res.table_sizes), td


def enumerate_best(n: int, adj: Sequence[Iterable[int]], s: int, x_allowed: Iterable[int],
                   counted: Iterable[int], chi: Iterable[int]) -> int | None:
    """Smallest feasible X-cost by exhaustive search over all labelings."""
    prob = _Problem(n, adj, s, x_allowed, counted, chi)
    best: int | None = None
    lab = [0] * n
    earlier = [[u for u in prob.adj[v] if u < v] for v in range(n)]

    def rec(v: int, cost: int, ca: bool, cb: bool):
        nonlocal best
        if cost > s or (best is not None and cost >= best):
            return
        if v == n:
            if ca and cb:
                best = cost if best is None else min(best, cost)
            return
        for l in prob.domain[v]:
            if any(_clash(l, lab[u]) for u in earlier[v]):
                continue
            lab[v] = l
            rec(v + 1, cost + (prob.cost[v] if l == LX else 0),
                ca or (l == LA and prob.chi[v]), cb or (l == LB and prob.chi[v]))

    rec(0, 0, False, False)
    return best
