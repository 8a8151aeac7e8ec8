"""Dominating Set: oracle, hub solver and the two lower-bound reductions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import InstanceTooLarge
from .graph import Graph, HubDecomposition, validate_hub


@dataclass(frozen=True)
class DomSetResult:
    size: int
    witness: tuple


def is_dominating(g: Graph, xs) -> bool:
    xs = set(xs)
    return all(v in xs or g.adj[v] & xs for v in range(g.n))


def oracle_domset(g: Graph, cap: int = 20) -> DomSetResult:
    """Branch on the lowest undominated vertex: one of its closed neighbours is chosen."""
    if g.n > cap:
        raise InstanceTooLarge(f"n={g.n} above oracle cap {cap}")
    closed = [1 << v | sum(1 << u for u in g.adj[v]) for v in range(g.n)]
    full = (1 << g.n) - 1
    best = [g.n + 1, None]

    def rec(dom: int, chosen: list):
        if len(chosen) >= best[0]:
            return
        if dom == full:
            best[:] = [len(chosen), tuple(sorted(chosen))]
            return
        open_ = ~dom & full
        v = (open_ & -open_).bit_length() - 1
        if len(chosen) + 1 >= best[0]:
            return
        for u in sorted([v, *g.adj[v]], key=lambda u: -bin(closed[u] & open_).count("1")):
            chosen.append(u)
            rec(dom | closed[u], chosen)
            chosen.pop()

    rec(0, [])
    return DomSetResult(best[0], best[1] if best[1] is not None else ())


def solve_domset_hub(g: Graph, h: HubDecomposition) -> DomSetResult:
    """Guess the selected hub vertices, then cover the rest of Q from the components.

    For a fixed selection S the hub vertices outside N[S] must be dominated by
    component vertices; a DP over the components and the subsets of that
    remainder picks the cheapest per-component choices.
    """
    hub = sorted(h.hub)
    bit = {v: i for i, v in enumerate(hub)}
    p = len(hub)
    hub_closed = [1 << i | sum(1 << bit[u] for u in g.adj[v] if u in bit)
                  for i, v in enumerate(hub)]
    comps = []
    for comp in h.components:
        comp = sorted(comp)
        k = len(comp)
        idx = {v: j for j, v in enumerate(comp)}
        inner = [1 << j | sum(1 << idx[u] for u in g.adj[v] if u in idx) for j, v in enumerate(comp)]
        to_hub = [sum(1 << bit[u] for u in g.adj[v] if u in bit) for v in comp]
        rows = []
        for D in range(1 << k):
            dom = cov = 0
            for j in range(k):
                if D >> j & 1:
                    dom |= inner[j]
                    cov |= to_hub[j]
            rows.append((D, bin(D).count("1"), dom, cov))
        comps.append((comp, to_hub, rows))

    best = (g.n + 1, ())
    for S in range(1 << p):
        size = bin(S).count("1")
        if size >= best[0]:
            continue
        dom_q = 0
        for i in range(p):
            if S >> i & 1:
                dom_q |= hub_closed[i]
        need = ~dom_q & ((1 << p) - 1)
        dp = {0: (0, ())}
        for comp, to_hub, rows in comps:
            # component vertices adjacent to a selected hub vertex are already dominated
            ext = sum(1 << j for j in range(len(comp)) if to_hub[j] & S)
            full = (1 << len(comp)) - 1
            opts: dict = {}
            for D, cost, dom, cov in rows:
                if (dom | ext) == full:
                    m = cov & need
                    if m not in opts or cost < opts[m][0]:
                        opts[m] = (cost, D)
            nxt: dict = {}
            for m, (c, w) in dp.items():
                for cm, (cc, D) in opts.items():
                    key = m | cm
                    tot = c + cc
                    if key not in nxt or tot < nxt[key][0]:
                        nxt[key] = (tot, w + tuple(comp[j] for j in range(len(comp)) if D >> j & 1))
            dp = nxt
        if need in dp and size + dp[need][0] < best[0]:
            chosen = tuple(hub[i] for i in range(p) if S >> i & 1) + dp[need][1]
            best = (size + dp[need][0], tuple(sorted(chosen)))
    assert is_dominating(g, best[1])
    return DomSetResult(*best)


def _as_sets(family: Sequence) -> list:
    return [sorted(set(F)) for F in family]


def reduce_setcover_to_domset(n: int, family: Sequence) -> tuple[Graph, HubDecomposition]:
    """Universe vertices y_1..y_n form the hub; set F gets the path a_F b_F c_F.

    Elements are 1..n. Minimum dominating set = minimum cover + |F|.
    """
    fam = _as_sets(family)
    if set().union(*fam) != set(range(1, n + 1)):
        raise ValueError("family does not cover the universe")
    es = []
    for k, F in enumerate(fam):
        a, b, c = n + 3 * k, n + 3 * k + 1, n + 3 * k + 2
        es += [(a, b), (b, c)] + [(i - 1, a) for i in F]
    g = Graph.from_edges(n + 3 * len(fam), es)
    return g, validate_hub(g, range(n), 3, max([len(F) for F in fam], default=0))


def reduce_hittingset_to_domset(n: int, family: Sequence) -> tuple[Graph, HubDecomposition]:
    """Hub y_1..y_n with pendant paths y_i a_i b_i and one z_F per set.

    Minimum dominating set = n + minimum hitting set.
    """
    fam = _as_sets(family)
    if any(not F or not set(F) <= set(range(1, n + 1)) for F in fam):
        raise ValueError("sets must be nonempty subsets of 1..n")
    es = []
    for i in range(n):
        es += [(i, n + i), (n + i, 2 * n + i)]
    for k, F in enumerate(fam):
        es += [(i - 1, 3 * n + k) for i in F]
    g = Graph.from_edges(3 * n + len(fam), es)
    return g, validate_hub(g, range(n), 2, max([len(F) for F in fam], default=1))


def min_set_cover(n: int, family: Sequence) -> int:
    fam = [sum(1 << (i - 1) for i in F) for F in family]
    full = (1 << n) - 1
    for k in range(len(fam) + 1):
        if any(_union(c) == full for c in combinations(fam, k)):
            return k
    raise ValueError("family does not cover the universe")


def min_hitting_set(n: int, family: Sequence) -> int:
    fam = [sum(1 << (i - 1) for i in F) for F in family]
    for k in range(n + 1):
        for c in combinations(list(range(n)), k):
            hs = sum(1 << i for i in c)
            if all(F & hs for F in fam):
                return k
    raise ValueError("empty set in family")


def _union(masks) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def all_families(n: int, max_sets: int):
    """Families of distinct nonempty subsets of 1..n with at most `max_sets` members."""
    subsets = [tuple(i + 1 for i in range(n) if m >> i & 1) for m in range(1, 1 << n)]
    for k in range(max_sets + 1):
        yield from combinations(subsets, k)
