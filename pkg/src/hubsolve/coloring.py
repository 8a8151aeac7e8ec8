"""Hub-parameterized coloring solvers and exhaustive oracles.

Colors are 1..q. A solution lists per-vertex colors for the surviving
vertices plus the deleted vertices or edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

import numpy as np

from .errors import InstanceTooLarge
from .graph import Graph, HubDecomposition, ListAssignment


@dataclass(frozen=True)
class ColoringSolution:
    assignment: dict
    deleted_vertices: frozenset = frozenset()
    deleted_edges: frozenset = frozenset()
    cost: int = 0
    leaves: int = 0


def check_solution(g: Graph, sol: ColoringSolution, L: Optional[ListAssignment] = None,
                   q: Optional[int] = None) -> bool:
    """True iff the assignment is a proper (list) coloring of the residual graph."""
    dv, de = sol.deleted_vertices, sol.deleted_edges
    for v in range(g.n):
        if v in dv:
            if v in sol.assignment:
                return False
            continue
        c = sol.assignment.get(v)
        if c is None:
            return False
        if L is not None and c not in L[v]:
            return False
        if q is not None and not 1 <= c <= q:
            return False
    for u, v in g.edges:
        if u in dv or v in dv or (u, v) in de:
            continue
        if sol.assignment[u] == sol.assignment[v]:
            return False
    return sol.cost == len(dv) + len(de)


# ---------------------------------------------------------------- local search

def _extend(g: Graph, comp, fixed: dict, lists) -> Optional[dict]:
    """Backtracking list-coloring of `comp` given fixed colors around it."""
    order = sorted(comp)
    col = {}

    def ok(v, c):
        for u in g.adj[v]:
            if fixed.get(u) == c or col.get(u) == c:
                return False
        return True

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(lists[v]):
            if ok(v, c):
                col[v] = c
                if rec(i + 1):
                    return True
                del col[v]
        return False

    return dict(col) if rec(0) else None


def _local_vd(g: Graph, comp, fixed: dict, lists) -> tuple[int, frozenset, dict]:
    """Minimum deletions inside `comp` so the rest colors properly from lists."""
    order = sorted(comp)
    best = [len(order) + 1, None, None]
    col: dict = {}
    dele: list = []

    def rec(i, cost):
        if cost >= best[0]:
            return
        if i == len(order):
            best[:] = [cost, frozenset(dele), dict(col)]
            return
        v = order[i]
        for c in sorted(lists[v]):
            if all(fixed.get(u) != c and col.get(u) != c for u in g.adj[v]):
                col[v] = c
                rec(i + 1, cost)
                del col[v]
        dele.append(v)
        rec(i + 1, cost + 1)
        dele.pop()

    rec(0, 0)
    return best[0], best[1], best[2]


def _local_ed(g: Graph, comp, fixed: dict, q: int) -> tuple[int, dict]:
    """Min monochromatic edges among edges touching `comp` (neighbours fixed)."""
    order = sorted(comp)
    best = [None, None]
    col: dict = {}

    def rec(i, cost):
        if best[0] is not None and cost >= best[0]:
            return
        if i == len(order):
            best[:] = [cost, dict(col)]
            return
        v = order[i]
        for c in range(1, q + 1):
            bad = sum(1 for u in g.adj[v] if fixed.get(u) == c or col.get(u) == c)
            col[v] = c
            rec(i + 1, cost + bad)
            del col[v]

    rec(0, 0)
    return best[0], best[1]


def _mono_edges(g: Graph, assignment: dict) -> frozenset:
    return frozenset(e for e in g.edges if assignment[e[0]] == assignment[e[1]])


# ---------------------------------------------------------------- q^p solvers

def solve_coloring(g: Graph, h: HubDecomposition, q: int) -> Optional[ColoringSolution]:
    hub = sorted(h.hub)
    full = frozenset(range(1, q + 1))
    lists = [full] * g.n
    hub_edges = [(u, v) for u, v in g.edges if u in h.hub and v in h.hub]
    memo: dict = {}
    leaves = 0
    for colors in product(range(1, q + 1), repeat=len(hub)):
        leaves += 1
        fixed = dict(zip(hub, colors))
        if any(fixed[u] == fixed[v] for u, v in hub_edges):
            continue
        out = dict(fixed)
        for i, comp in enumerate(h.components):
            key = (i, tuple(fixed[x] for x in h.boundaries[i]))
            if key not in memo:
                memo[key] = _extend(g, comp, fixed, lists)
            ext = memo[key]
            if ext is None:
                break
            out.update(ext)
        else:
            return ColoringSolution(out, leaves=leaves)
    return None


def solve_coloring_vd(g: Graph, L: ListAssignment, h: HubDecomposition) -> ColoringSolution:
    hub = sorted(h.hub)
    options = [sorted(L[x]) + [None] for x in hub]
    hub_edges = [(u, v) for u, v in g.edges if u in h.hub and v in h.hub]
    memo: dict = {}
    best = None
    leaves = 0
    for state in product(*options):
        leaves += 1
        fixed = {x: c for x, c in zip(hub, state) if c is not None}
        if any(u in fixed and v in fixed and fixed[u] == fixed[v] for u, v in hub_edges):
            continue
        cost = sum(1 for c in state if c is None)
        parts = []
        for i, comp in enumerate(h.components):
            if best is not None and cost >= best[0]:
                break
            key = (i, tuple(fixed.get(x) for x in h.boundaries[i]))
            if key not in memo:
                memo[key] = _local_vd(g, comp, fixed, L)
            parts.append(memo[key])
            cost += memo[key][0]
        else:
            if best is None or cost < best[0]:
                best = (cost, fixed, parts)
    cost, fixed, parts = best
    assignment = dict(fixed)
    deleted = set(h.hub) - set(fixed)
    for _, dele, col in parts:
        deleted |= dele
        assignment.update(col)
    return ColoringSolution(assignment, frozenset(deleted), cost=cost, leaves=leaves)


def solve_coloring_ed(g: Graph, h: HubDecomposition, q: int) -> ColoringSolution:
    hub = sorted(h.hub)
    hub_edges = [(u, v) for u, v in g.edges if u in h.hub and v in h.hub]
    memo: dict = {}
    best = None
    leaves = 0
    for colors in product(range(1, q + 1), repeat=len(hub)):
        leaves += 1
        fixed = dict(zip(hub, colors))
        cost = sum(1 for u, v in hub_edges if fixed[u] == fixed[v])
        parts = []
        for i, comp in enumerate(h.components):
            if best is not None and cost >= best[0]:
                break
            key = (i, tuple(fixed[x] for x in h.boundaries[i]))
            if key not in memo:
                memo[key] = _local_ed(g, comp, fixed, q)
            parts.append(memo[key][1])
            cost += memo[key][0]
        else:
            if best is None or cost < best[0]:
                best = (cost, fixed, parts)
    cost, fixed, parts = best
    assignment = dict(fixed)
    for col in parts:
        assignment.update(col)
    return ColoringSolution(assignment, deleted_edges=_mono_edges(g, assignment),
                            cost=cost, leaves=leaves)


# ---------------------------------------------------------------- list coloring

class _LCState:
    __slots__ = ("g", "delta", "leaves", "exhaustive_below")

    def __init__(self, g, delta, exhaustive_below):
        self.g = g
        self.delta = delta
        self.leaves = 0
        self.exhaustive_below = exhaustive_below


def _gamma_colorings(g: Graph, gamma, lists):
    """Proper list colorings of gamma, lexicographic order."""
    for cols in product(*(sorted(lists[x]) for x in gamma)):
        if all(not (g.has_edge(gamma[i], gamma[j]) and cols[i] == cols[j])
               for i in range(len(gamma)) for j in range(i + 1, len(gamma))):
            yield cols


def _lc(st: _LCState, alive: set, hub: set, lists: dict) -> Optional[dict]:
    g = st.g
    alive, hub, lists = set(alive), set(hub), dict(lists)
    assign: dict = {}
    deferred: list = []

    def fix(v, c):
        assign[v] = c
        alive.discard(v)
        hub.discard(v)
        for u in g.adj[v]:
            if u in alive:
                lists[u] = lists[u] - {c}

    branch = None
    while True:
        if any(not lists[v] for v in alive):
            st.leaves += 1
            return None
        x = next((x for x in sorted(hub) if len(lists[x]) == 1), None)
        if x is not None:
            fix(x, next(iter(lists[x])))
            continue
        changed = False
        pending = []
        for A in g.components(alive - hub):
            gamma = sorted({u for v in A for u in g.adj[v] if u in hub})
            if not gamma:
                col = _extend(g, A, {}, lists)
                if col is None:
                    st.leaves += 1
                    return None
                for v, c in col.items():
                    fix(v, c)
                changed = True
                continue
            total = 0
            good = []
            for cols in _gamma_colorings(g, gamma, lists):
                total += 1
                if _extend(g, A, dict(zip(gamma, cols)), lists) is not None:
                    good.append(cols)
            if not good:
                st.leaves += 1
                return None
            if len(good) == total:
                deferred.append(("comp", A, {v: lists[v] for v in A}))
                alive -= A
                changed = True
            else:
                pending.append((A, gamma, good))
        if changed:
            continue
        for x in sorted(hub):
            if len(g.adj[x] & alive) < len(lists[x]):
                deferred.append(("vtx", x, lists[x]))
                alive.discard(x)
                hub.discard(x)
                changed = True
        if changed:
            continue
        if not alive:
            break
        if len(hub) < st.exhaustive_below:
            branch = ("exhaustive", sorted(hub), list(_gamma_colorings(g, sorted(hub), lists)))
            break
        if pending:
            A, gamma, good = pending[0]
            branch = ("gamma", gamma, good)
            break
        # only hub vertices remain: demote a low hub-degree vertex into a component
        x = next((x for x in sorted(hub) if len(g.adj[x] & alive) <= st.delta), None)
        if x is not None:
            hub.discard(x)
            continue
        u = min(sorted(hub))
        v = min(g.adj[u] & alive)
        branch = ("edge", [u, v], list(_gamma_colorings(g, [u, v], lists)))
        break

    if branch is None:
        st.leaves += 1
        result = {}
    else:
        _, verts, options = branch
        result = None
        for cols in options:
            sub_alive, sub_lists = set(alive), dict(lists)
            sub_assign = dict(zip(verts, cols))
            for v, c in sub_assign.items():
                sub_alive.discard(v)
                for u in g.adj[v]:
                    if u in sub_alive:
                        sub_lists[u] = sub_lists[u] - {c}
            sub = _lc(st, sub_alive, hub - set(verts), sub_lists)
            if sub is not None:
                result = {**sub, **sub_assign}
                break
        if result is None and not options:
            st.leaves += 1
        if result is None:
            return None
    result.update(assign)
    for kind, obj, lst in reversed(deferred):
        if kind == "comp":
            col = _extend(g, obj, result, lst)
            assert col is not None, "deferred component failed to extend"
            result.update(col)
        else:
            used = {result.get(u) for u in g.adj[obj]}
            result[obj] = min(c for c in lst if c not in used)
    return result


def list_coloring_search(g: Graph, L: ListAssignment, h: HubDecomposition,
                         exhaustive_below: int = 0) -> tuple[Optional[ColoringSolution], int]:
    """Branch-and-reduce list coloring; returns (solution or None, leaf count).

    Every terminal call of the recursion counts as one leaf, so the count
    is comparable with (q^delta - 1)^(p/delta).
    """
    st = _LCState(g, max(h.delta, 1), exhaustive_below)
    lists = {v: frozenset(L[v]) for v in range(g.n)}
    col = _lc(st, set(range(g.n)), set(h.hub), lists)
    if col is None:
        return None, st.leaves
    return ColoringSolution(col, leaves=st.leaves), st.leaves


def solve_list_coloring(g: Graph, L: ListAssignment, h: HubDecomposition,
                        exhaustive_below: int = 0) -> Optional[ColoringSolution]:
    return list_coloring_search(g, L, h, exhaustive_below)[0]


# ---------------------------------------------------------------- oracles

def _dfs_color(g: Graph, vertices, lists) -> Optional[dict]:
    order = sorted(vertices)
    alive = set(order)
    col: dict = {}

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(lists[v]):
            if all(col.get(u) != c for u in g.adj[v] if u in alive):
                col[v] = c
                if rec(i + 1):
                    return True
                del col[v]
        return False

    return dict(col) if rec(0) else None


def _cap(g: Graph, cap: Optional[int]):
    if cap is not None and g.n > cap:
        raise InstanceTooLarge(f"n={g.n} above oracle cap {cap}")


def oracle_list_coloring(g: Graph, L: ListAssignment, cap: Optional[int] = 12) -> Optional[ColoringSolution]:
    _cap(g, cap)
    col = _dfs_color(g, range(g.n), L.lists)
    return None if col is None else ColoringSolution(col)


def oracle_coloring(g: Graph, q: int, cap: Optional[int] = 12) -> Optional[ColoringSolution]:
    return oracle_list_coloring(g, ListAssignment.full(g.n, q), cap)


def oracle_vd(g: Graph, L: ListAssignment, cap: Optional[int] = 12) -> ColoringSolution:
    """Smallest vertex set whose removal leaves a list-colorable graph."""
    _cap(g, cap)
    for k in range(g.n + 1):
        for X in combinations(range(g.n), k):
            rest = set(range(g.n)) - set(X)
            col = _dfs_color(g, rest, L.lists)
            if col is not None:
                return ColoringSolution(col, frozenset(X), cost=k)
    raise AssertionError("unreachable: deleting everything always works")


def oracle_ed(g: Graph, q: int, cap: Optional[int] = 12) -> ColoringSolution:
    """Fewest monochromatic edges over all q^n colorings (vertex 0 fixed to color 1)."""
    _cap(g, cap)
    if g.n == 0:
        return ColoringSolution({}, deleted_edges=frozenset(), cost=0)
    if g.n == 1:
        grid = np.zeros((1, 0), dtype=np.int64)
    else:
        grid = np.indices((q,) * (g.n - 1)).reshape(g.n - 1, -1).T + 1
    cols = np.hstack([np.ones((len(grid), 1), dtype=grid.dtype), grid])
    mono = np.zeros(len(cols), dtype=np.int64)
    for u, v in g.sorted_edges:
        mono += cols[:, u] == cols[:, v]
    best = int(np.argmin(mono))
    col = {v: int(cols[best, v]) for v in range(g.n)}
    bad = frozenset((u, v) for u, v in g.sorted_edges if col[u] == col[v])
    return ColoringSolution(col, deleted_edges=bad, cost=len(bad))
