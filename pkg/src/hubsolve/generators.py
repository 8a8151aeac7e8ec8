"""Seeded random instance generators shared by tests, selfcheck and scripts."""
from __future__ import annotations

import random
from itertools import combinations, permutations, product

from .graph import Graph, HubDecomposition, ListAssignment, validate_hub
from .wildcard import Constraint, WildcardCsp, decode, encode


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, es)


def grow_hub(g: Graph, start, sigma: int, delta: int) -> HubDecomposition:
    """Extend `start` by highest-degree vertices until it is a (sigma, delta)-hub."""
    hub = set(start)
    while True:
        bad = None
        for c in g.components(v for v in range(g.n) if v not in hub):
            nb = {u for v in c for u in g.adj[v] if u in hub}
            if len(c) > sigma or len(nb) > delta:
                bad = c
                break
        if bad is None:
            return validate_hub(g, hub, sigma, delta)
        hub.add(min(bad, key=lambda v: (-len(g.adj[v] & bad), v)))


def random_hub(rng: random.Random, g: Graph, sigma: int, delta: int) -> HubDecomposition:
    k = rng.randint(0, max(0, g.n // 2))
    start = rng.sample(range(g.n), k)
    return grow_hub(g, start, sigma, delta)


def random_lists(rng: random.Random, n: int, q: int, p_full: float = 0.4,
                 p_empty: float = 0.02) -> ListAssignment:
    out = []
    for _ in range(n):
        r = rng.random()
        if r < p_empty:
            out.append(frozenset())
        elif r < p_empty + p_full:
            out.append(frozenset(range(1, q + 1)))
        else:
            k = rng.randint(1, q)
            out.append(frozenset(rng.sample(range(1, q + 1), k)))
    return ListAssignment(q, tuple(out))


def monotone_repair(table: list, k: int, q: int) -> list:
    """Replace each entry by the minimum over all its refinements (× filled in)."""
    size = len(table)
    order = sorted(range(size), key=lambda i: sum(1 for d in decode(i, k, q) if d == q))
    out = list(table)
    for idx in order:
        digits = decode(idx, k, q)
        for i, d in enumerate(digits):
            if d == q:
                for c in range(q):
                    lower = list(digits)
                    lower[i] = c
                    out[idx] = min(out[idx], out[encode(lower, q)])
    return out


def random_wildcard_csp(rng: random.Random, n: int, q: int, r: int, m: int,
                        max_cost: int = 4) -> WildcardCsp:
    cons = []
    for _ in range(m):
        k = rng.randint(0, min(r, n))
        scope = tuple(rng.sample(range(n), k))
        raw = [rng.randint(0, max_cost) for _ in range((q + 1) ** k)]
        cons.append(Constraint(scope, tuple(monotone_repair(raw, k, q))))
    return WildcardCsp(n, q, tuple(cons))


def all_tuples(d: int, r: int):
    return list(product(range(1, d + 1), repeat=r))


def random_hubbed_graph(rng: random.Random, n: int, p: int, sigma: int = 3, delta: int = 3,
                        density: float = 0.6) -> tuple[Graph, HubDecomposition]:
    """Hub 0..p-1 first, then components of at most sigma vertices seeing at most delta hub vertices."""
    es = [(u, v) for u in range(p) for v in range(u + 1, p) if rng.random() < density]
    v = p
    while v < n:
        size = rng.randint(1, min(sigma, n - v))
        comp = list(range(v, v + size))
        for i in range(1, size):
            es.append((comp[rng.randrange(i)], comp[i]))
        es += [(a, b) for a, b in combinations(comp, 2) if rng.random() < density]
        seen = rng.sample(range(p), min(p, rng.randint(0, delta)))
        es += [(a, b) for a in comp for b in seen if rng.random() < density]
        v += size
    g = Graph.from_edges(n, set((min(a, b), max(a, b)) for a, b in es))
    return g, validate_hub(g, range(p), sigma, delta)


def families_up_to_relabelling(n: int, max_sets: int, max_size: int | None = None) -> list:
    """One representative per orbit of families of nonempty subsets of [n] under S_n.

    Families are sorted tuples of 0-based bitmasks; grown one set at a time
    and canonicalised as the least image over all element permutations.
    """
    max_size = n if max_size is None else max_size
    masks = [m for m in range(1, 1 << n) if bin(m).count("1") <= max_size]
    images = []
    for perm in permutations(range(n)):
        images.append([sum(1 << perm[i] for i in range(n) if m >> i & 1) for m in range(1 << n)])

    def canon(fam):
        return min(tuple(sorted(img[m] for m in fam)) for img in images)

    level = {()}
    out = [()]
    for _ in range(max_sets):
        nxt = set()
        for fam in level:
            for m in masks:
                if m not in fam:
                    nxt.add(canon(fam + (m,)))
        level = nxt
        out += sorted(level)
    return out
