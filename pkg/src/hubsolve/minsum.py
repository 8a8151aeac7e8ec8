"""Exact min-sum evaluation of list-coloring edge costs by variable elimination.

The objective is the number of monochromatic edges of a list q-coloring; kept
vertices are not eliminated and the result is a full table over their colors.
Colors outside a list cost +inf. The answer is exact for any elimination order
and any separator hint; both only affect speed.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

import numpy as np

from .errors import GadgetTooLarge

INF = float("inf")
MAX_TABLE = 1 << 22
# component tables shared across calls, keyed by canonical structure
_SHARED: dict = {}
_SHARED_EDGES = 4_000_000
_shared_size = 0


def _expand(scope: tuple, arr: np.ndarray, union: tuple) -> np.ndarray:
    # both scopes sorted, so only singleton axes need inserting
    if scope == union:
        return arr
    shape = [1] * len(union)
    j = 0
    for i, v in enumerate(union):
        if j < len(scope) and scope[j] == v:
            shape[i] = arr.shape[j]
            j += 1
    return arr.reshape(shape)


def _eliminate(n: int, q: int, init: Iterable, const: float, elim: Iterable[int],
               keep: tuple, max_table: int) -> np.ndarray:
    """Eliminate `elim` from the factor list `init` of (sorted scope, array)."""
    factors: dict[tuple, np.ndarray] = {}
    by_var: dict[int, set] = {}
    nbrs: dict[int, set] = {}

    def add(scope: tuple, arr: np.ndarray):
        if scope in factors:
            factors[scope] = factors[scope] + arr
            return
        factors[scope] = arr
        for v in scope:
            by_var.setdefault(v, set()).add(scope)
            nb = nbrs.setdefault(v, set())
            nb.update(scope)
            nb.discard(v)

    for scope, arr in init:
        if scope:
            add(scope, arr)
        else:
            const += float(arr)

    kept = set(keep)
    heap = [(len(nbrs.get(v, ())), v) for v in elim]
    heapq.heapify(heap)
    done = set()
    while heap:
        deg, v = heapq.heappop(heap)
        if v in done:
            continue
        mine = nbrs.get(v, set())
        if deg != len(mine):
            heapq.heappush(heap, (len(mine), v))
            continue
        done.add(v)
        scopes = by_var.pop(v, ())
        if not scopes:
            continue
        union = tuple(sorted(mine | {v}))
        if q ** len(union) > max_table:
            raise GadgetTooLarge(f"elimination factor over {len(union)} vertices")
        acc = None
        for s in scopes:
            arr = _expand(s, factors.pop(s), union)
            acc = arr if acc is None else acc + arr
            for w in s:
                if w != v:
                    by_var[w].discard(s)
        rest = tuple(w for w in union if w != v)
        for w in rest:
            nbrs[w].discard(v)
        nbrs.pop(v, None)
        red = acc.min(axis=union.index(v))
        if rest:
            add(rest, red)
            for w in rest:
                if w not in kept and w not in done:
                    heapq.heappush(heap, (len(nbrs[w]), w))
        else:
            const += float(red)

    ks = tuple(sorted(keep))
    total = np.zeros((q,) * len(ks)) + const
    for s, arr in factors.items():
        total = total + _expand(s, arr, ks)
    if ks != keep:
        total = np.transpose(total, [ks.index(v) for v in keep])
    return total


def _graph_factors(q: int, vertices: Iterable[int], edges, lists, kept: set):
    """Edge and list factors; one-color vertices outside `kept` are folded into unaries."""
    full = frozenset(range(1, q + 1))
    vertices = list(vertices)
    fixed = {v: next(iter(lists[v])) for v in vertices if len(lists[v]) == 1 and v not in kept}
    unary: dict = {}
    const = 0.0
    neq = np.eye(q)
    out = []
    for u, v in edges:
        if u in fixed and v in fixed:
            const += fixed[u] == fixed[v]
        elif u in fixed or v in fixed:
            a, c = (v, fixed[u]) if u in fixed else (u, fixed[v])
            unary.setdefault(a, np.zeros(q))[c - 1] += 1
        else:
            out.append(((u, v) if u < v else (v, u), neq))
    for v in vertices:
        if v in fixed:
            continue
        lst = lists[v]
        if lst != full:
            arr = unary.setdefault(v, np.zeros(q))
            arr += [0.0 if c in lst else INF for c in range(1, q + 1)]
    out += [((v,), arr) for v, arr in unary.items()]
    free = [v for v in vertices if v not in fixed and v not in kept]
    return out, const, free


def _remember(key: tuple, tab: np.ndarray):
    global _shared_size
    size = len(key[3])
    if size < 2000 or size > _SHARED_EDGES // 4:
        return
    if _shared_size + size > _SHARED_EDGES:
        _SHARED.clear()
        _shared_size = 0
    _SHARED[key] = tab
    _shared_size += size


def edge_cost_table(n: int, q: int, edges, lists: Sequence, keep: Sequence[int],
                    separator: Iterable[int] = (), max_table: int = MAX_TABLE) -> np.ndarray:
    """Minimum monochromatic-edge count for every coloring of `keep`.

    Returns an array of shape (q,)*len(keep), axis i indexing color i+1 of keep[i].
    With a separator S, each component of G - S - keep is solved once per
    distinct relabelled structure and glued back as a factor over its boundary.
    """
    keep = tuple(keep)
    if len(set(keep)) != len(keep):
        raise ValueError("repeated kept vertex")
    kept = set(keep)
    sep = set(separator)
    if not sep:
        init, const, free = _graph_factors(q, range(n), edges, lists, kept)
        return _eliminate(n, q, init, const, free, keep, max_table)

    sep |= kept
    adj: list = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = bytearray(n)
    cache: dict = {}
    init = []
    full = frozenset(range(1, q + 1))
    for s in range(n):
        if seen[s] or s in sep:
            continue
        comp = [s]
        seen[s] = 1
        i = 0
        while i < len(comp):
            for w in adj[comp[i]]:
                if not seen[w] and w not in sep:
                    seen[w] = 1
                    comp.append(w)
            i += 1
        comp.sort()
        label = {v: k for k, v in enumerate(comp)}
        touch: dict = {}
        es = []
        for v in comp:
            for w in adj[v]:
                if w in label:
                    if v < w:
                        es.append((label[v], label[w]))
                else:
                    touch.setdefault(w, []).append(label[v])
        # boundary vertices are named by their internal neighbourhoods; equal
        # neighbourhoods are interchangeable, so ties may break either way
        bnd = sorted(touch, key=lambda w: sorted(touch[w]))
        for k, w in enumerate(bnd):
            es += [(a, len(comp) + k) for a in touch[w]]
        es.sort()
        key = (q, len(bnd), tuple(lists[v] for v in comp), tuple(es))
        tab = cache.get(key)
        if tab is None:
            tab = _SHARED.get(key)
        if tab is None:
            loc_lists = [lists[v] for v in comp] + [full] * len(bnd)
            m = len(loc_lists)
            loc_keep = tuple(range(len(comp), m))
            tab = edge_cost_table(m, q, es, loc_lists, loc_keep, (), max_table)
            _remember(key, tab)
        cache[key] = tab
        order = sorted(range(len(bnd)), key=lambda k: bnd[k])
        init.append((tuple(bnd[k] for k in order), np.transpose(tab, order) if bnd else tab))
    inner = [(u, v) for u, v in edges if u in sep and v in sep]
    base, const, _ = _graph_factors(q, sorted(sep), inner, lists, sep)
    free = sorted(sep - kept)
    return _eliminate(n, q, base + init, const, free, keep, max_table)


def min_mono_edges(n: int, q: int, edges, lists: Sequence) -> float:
    return float(edge_cost_table(n, q, edges, lists, ()))
