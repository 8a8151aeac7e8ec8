"""Edge-deletion gadgets over two colors, their exact verifier and Max Cut synthesis.

A gadget is a graph with lists and an ordered portal tuple. cost_ed(gadget, d)
is the fewest edge deletions that let the portal state d extend to a proper
list coloring, which is the fewest monochromatic edges over list colorings
extending d. Color 1 reads as true and 2 as false.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GadgetTooLarge, ParseError
from .graph import Graph, HubDecomposition, _content_lines, _int, parse_graph_lines, tight_hub
from .maxcsp import MaxCsp
from .minsum import MAX_TABLE, edge_cost_table


@dataclass(frozen=True)
class Relation:
    q: int
    r: int
    tuples: frozenset

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.r or any(not 1 <= x <= self.q for x in t):
                raise ValueError(f"tuple {t} outside [{self.q}]^{self.r}")

    @classmethod
    def of(cls, q: int, r: int, tuples: Iterable) -> "Relation":
        return cls(q, r, frozenset(tuple(t) for t in tuples))

    def all(self) -> list:
        return list(product(range(1, self.q + 1), repeat=self.r))

    def excluded(self) -> list:
        return [t for t in self.all() if t not in self.tuples]

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples


def neq_relation() -> Relation:
    return Relation.of(2, 2, [(1, 2), (2, 1)])


def or_relation(p: int) -> Relation:
    return Relation.of(2, p, [t for t in product((1, 2), repeat=p) if 1 in t])


def all_relations(r: int) -> list:
    tup = list(product((1, 2), repeat=r))
    return [Relation.of(2, r, [t for i, t in enumerate(tup) if mask >> i & 1])
            for mask in range(1 << len(tup))]


@dataclass(frozen=True)
class Gadget:
    n: int
    edges: tuple  # sorted (u, v) with u < v
    lists: tuple  # frozenset per vertex
    portals: tuple
    q: int = 2
    # evaluation hint only: vertices that split the gadget into repeated parts
    separator: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        if len(set(self.portals)) != len(self.portals):
            raise ValueError("portals must be distinct")
        if len(self.lists) != self.n:
            raise ValueError("one list per vertex required")
        for lst in self.lists:
            if not lst <= frozenset(range(1, self.q + 1)):
                raise ValueError(f"list {sorted(lst)} not inside [{self.q}]")

    @property
    def arity(self) -> int:
        return len(self.portals)

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, frozenset(self.edges))

    def portals_independent(self) -> bool:
        ps = set(self.portals)
        return not any(u in ps and v in ps for u, v in self.edges)

    @cached_property
    def table(self) -> np.ndarray:
        return edge_cost_table(self.n, self.q, self.edges, self.lists, self.portals,
                               self.separator)


class _Builder:
    def __init__(self, q: int = 2):
        self.q = q
        self.full = frozenset(range(1, q + 1))
        self.lists: list = []
        self.edges: set = set()
        self.separator: set = set()

    def vertex(self, lst: Iterable[int] = None) -> int:
        self.lists.append(self.full if lst is None else frozenset(lst))
        return len(self.lists) - 1

    def edge(self, u: int, v: int):
        e = (u, v) if u < v else (v, u)
        if u == v or e in self.edges:
            raise ValueError(f"gluing would create a loop or parallel edge at {e}")
        self.edges.add(e)

    def embed(self, gad: Gadget, onto: Sequence[int]) -> list:
        """Copy gad, identifying its i-th portal with onto[i]; returns the vertex map."""
        where = dict(zip(gad.portals, onto))
        start = len(self.lists)
        mp = []
        nxt = start
        for v in range(gad.n):
            if v in where:
                mp.append(where[v])
            else:
                mp.append(nxt)
                nxt += 1
        self.lists += [gad.lists[v] for v in range(gad.n) if v not in where]
        fresh = [(mp[u], mp[v]) for u, v in gad.edges]
        for u, v in fresh:
            # only portal-portal edges can collide with existing ones
            if u < start and v < start:
                self.edge(u, v)
        self.edges.update(((u, v) if u < v else (v, u)) for u, v in fresh
                          if u >= start or v >= start)
        self.separator.update(mp[v] for v in gad.separator)
        return mp

    def done(self, portals: Sequence[int], separator: Iterable[int] = ()) -> Gadget:
        self.separator.update(separator)
        return Gadget(len(self.lists), tuple(sorted(self.edges)), tuple(self.lists),
                      tuple(portals), self.q, frozenset(self.separator - set(portals)))


# ---------------------------------------------------------------- cost and verification

def cost_ed(gad: Gadget, d: Sequence[int]) -> float:
    """Exact cost via variable elimination; +inf if d clashes with a portal list."""
    d = tuple(d)
    if len(d) != gad.arity or any(not 1 <= x <= gad.q for x in d):
        raise ValueError(f"state {d} outside [{gad.q}]^{gad.arity}")
    return float(gad.table[tuple(x - 1 for x in d)])


def cost_ed_brute(gad: Gadget, d: Sequence[int], max_vertices: int = 14,
                  max_edges: int = 18) -> float:
    """Independent oracle: enumerate colorings, or edge subsets when edges are few."""
    fixed = dict(zip(gad.portals, d))
    if any(c not in gad.lists[v] for v, c in fixed.items()):
        return float("inf")
    free = [v for v in range(gad.n) if v not in fixed]
    if gad.n <= max_vertices:
        best = float("inf")
        for cols in product(*(sorted(gad.lists[v]) for v in free)):
            col = dict(fixed)
            col.update(zip(free, cols))
            best = min(best, sum(1 for u, v in gad.edges if col[u] == col[v]))
        return best
    if len(gad.edges) <= max_edges:
        from itertools import combinations
        from .coloring import _dfs_color
        from .graph import ListAssignment
        lists = list(gad.lists)
        for v, c in fixed.items():
            lists[v] = frozenset({c})
        L = ListAssignment(gad.q, tuple(lists))
        es = list(gad.edges)
        for k in range(len(es) + 1):
            for drop in combinations(es, k):
                g = Graph(gad.n, frozenset(es) - frozenset(drop))
                if _dfs_color(g, L) is not None:
                    return float(k)
        return float("inf")
    raise GadgetTooLarge(f"{gad.n} vertices and {len(gad.edges)} edges above brute caps")


@dataclass(frozen=True)
class Realization:
    k: Optional[float]  # common in-R cost, None if R is empty or costs differ
    realizes: bool
    omega: Optional[float]  # common excess of violations, None if not uniform or none
    uniform: bool  # all out-of-R costs equal (vacuous when R is full)
    costs: dict = field(repr=False, compare=False)

    def omega_realizes(self, omega: int) -> bool:
        if not self.realizes or not self.uniform:
            return False
        if self.k is None:  # empty R: any k = cost - omega works
            return all(c - omega >= 0 for c in self.costs.values())
        return self.omega is None or self.omega == omega


def verify_realization(gad: Gadget, R: Relation) -> Realization:
    if gad.arity != R.r or gad.q != R.q:
        raise ValueError("gadget arity or palette differs from the relation")
    costs = {d: cost_ed(gad, d) for d in R.all()}
    inside = {costs[d] for d in R.tuples}
    outside = {c for d, c in costs.items() if d not in R.tuples}
    uniform = len(outside) <= 1
    if len(inside) > 1:
        return Realization(None, False, None, uniform, costs)
    if not inside:
        return Realization(None, True, None, uniform, costs)
    k = inside.pop()
    realizes = k != float("inf") and all(c > k for c in outside)
    omega = outside.pop() - k if realizes and len(outside) == 1 else None
    return Realization(k, realizes, omega, uniform, costs)


def verify_extension_gadget(gad: Gadget, R: Relation) -> bool:
    """Zero deletions suffice exactly on the tuples of R."""
    if gad.arity != R.r or gad.q != R.q:
        raise ValueError("gadget arity or palette differs from the relation")
    return all((cost_ed(gad, d) == 0) == (d in R.tuples) for d in R.all())


# ---------------------------------------------------------------- constructions

def build_neq() -> Gadget:
    b = _Builder()
    x, y = b.vertex(), b.vertex()
    b.edge(x, y)
    return b.done((x, y))


@lru_cache(maxsize=None)
def build_or2() -> Gadget:
    """5-cycle v1..v5, v5 restricted to {2}, portals v1 and v4."""
    b = _Builder()
    v = [b.vertex() for _ in range(4)] + [b.vertex({2})]
    for i in range(5):
        b.edge(v[i], v[(i + 1) % 5])
    return b.done((v[0], v[3]))


@lru_cache(maxsize=None)
def build_or2_pow(omega: int) -> Gadget:
    if omega < 1:
        raise ValueError("omega must be positive")
    base = build_or2()
    b = _Builder()
    x, y = b.vertex(), b.vertex()
    for _ in range(omega):
        b.embed(base, (x, y))
    return b.done((x, y))


@lru_cache(maxsize=None)
def or_inner_omega(p: int) -> int:
    """alpha''+1 with alpha' measured on the 5-cycle gadget."""
    alpha1 = int(cost_ed(build_or2(), (1, 1)))
    return (2 * p - 1) + alpha1 * (comb(p, 2) + 2 * p) + 1


@lru_cache(maxsize=None)
def build_or(p: int, omega: Optional[int] = None) -> Gadget:
    """OR_p: the 5-cycle for p=2, the X/Y/Z construction with apex u for p>=3.

    p=1 gives an edge to a {2}-vertex, which forbids color 2 on the portal.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if p == 1:
        b = _Builder()
        x, w = b.vertex(), b.vertex({2})
        b.edge(x, w)
        return b.done((x,))
    if p == 2:
        return build_or2()
    if omega is None:
        omega = or_inner_omega(p)
    link = build_or2_pow(omega)
    b = _Builder()
    X = [b.vertex() for _ in range(p)]
    Y = [b.vertex() for _ in range(p)]
    Z = [b.vertex() for _ in range(p)]
    for i in range(p):
        b.embed(link, (X[i], Y[i]))
        b.embed(link, (Y[i], Z[i]))
    for i in range(p):
        for j in range(i + 1, p):
            b.embed(link, (Z[i], Z[j]))
    u = b.vertex({1})
    for v in X + Y + Z:
        b.edge(u, v)
    return b.done(Y)


def build_forbid(d: Sequence[int], inner_omega: Optional[int] = None) -> Gadget:
    return _forbid(tuple(d), inner_omega)


@lru_cache(maxsize=None)
def _forbid(d: tuple, inner_omega: Optional[int]) -> Gadget:
    """Realizes [2]^p minus {d}: OR_p with a pendant portal on every coordinate where d is 1."""
    if not d or any(x not in (1, 2) for x in d):
        raise ValueError("d must be a nonempty tuple over {1, 2}")
    core = build_or(len(d), inner_omega)
    b = _Builder()
    mp = b.embed(core, [b.vertex() for _ in d])
    ports = []
    for i, x in enumerate(d):
        xi = mp[core.portals[i]]
        if x == 1:
            yi = b.vertex()
            b.edge(xi, yi)
            ports.append(yi)
        else:
            ports.append(xi)
    return b.done(ports, [mp[v] for v in core.portals])


def build_relation(R: Relation, inner_omega: Optional[int] = None) -> Gadget:
    """One forbidding gadget per excluded tuple, glued on shared portals."""
    if R.q != 2 or R.r < 1:
        raise ValueError("two colors and arity >= 1 required")
    b = _Builder()
    xs = [b.vertex() for _ in range(R.r)]
    for d in R.excluded():
        b.embed(build_forbid(d, inner_omega), xs)
    return b.done(xs)


def auxiliary_relation(R: Relation) -> Relation:
    """R' over r + |excluded| coordinates, with one flag coordinate per excluded tuple."""
    bad = R.excluded()
    m = len(bad)
    out = [tuple(t) + (1,) * m for t in sorted(R.tuples)]
    for i, d in enumerate(bad):
        out.append(tuple(d) + tuple(2 if j == i else 1 for j in range(m)))
    return Relation.of(2, R.r + m, out)


def build_one_realizer(R: Relation, omega: int = 1, inner_omega: Optional[int] = 1) -> Gadget:
    """omega copies of the R' realizer with {2}-pendants on the flag portals."""
    if omega < 1:
        raise ValueError("omega must be positive")
    aux = auxiliary_relation(R)
    J = build_relation(aux, inner_omega)
    b = _Builder()
    mp = b.embed(J, [b.vertex() for _ in J.portals])
    for z in J.portals[R.r:]:
        b.edge(mp[z], b.vertex({2}))
    single = b.done([mp[z] for z in J.portals[:R.r]], [mp[z] for z in J.portals])
    if omega == 1:
        return single
    b = _Builder()
    ps = [b.vertex() for _ in range(R.r)]
    for _ in range(omega):
        b.embed(single, ps)
    return b.done(ps)


BUILDERS = ("neq", "or2", "or2pow", "or", "forbid", "relation", "one-realizer")


# ---------------------------------------------------------------- Max Cut synthesis

@dataclass(frozen=True)
class MaxCutSynthesis:
    graph: Graph
    threshold: int  # Max Cut >= threshold iff Max-CSP optimum <= z
    hub: HubDecomposition
    z: int
    z_prime: int
    alphas: tuple
    apex: int
    list_edges: int  # edges of the list-colored intermediate graph

    def threshold_for(self, z: int) -> int:
        return self.graph.m - (self.z_prime - self.z + z)


@lru_cache(maxsize=None)
def _realizer(R: Relation, inner_omega: Optional[int]) -> tuple[Gadget, int]:
    J = build_one_realizer(R, 1, inner_omega)
    rep = verify_realization(J, R)
    if not rep.omega_realizes(1):
        raise AssertionError(f"one-realizer check failed for {sorted(R.tuples)}")
    k = rep.k if rep.k is not None else min(rep.costs.values()) - 1
    return J, int(k)


def build_maxcut_instance(inst: MaxCsp, z: int, inner_omega: Optional[int] = 1) -> MaxCutSynthesis:
    """List stage with one 1-realizer per constraint, then list removal via an apex A."""
    if inst.d != 2:
        raise ValueError("domain size 2 required")
    omega = 1
    edges: list = []
    n = inst.n
    alphas = []
    always_bad = 0
    placed = []  # (vertex map, gadget, alpha) per constraint
    for scope, rel in inst.constraints:
        if not scope:
            always_bad += 0 if () in rel else 1
            alphas.append(0)
            continue
        J, alpha = _realizer(Relation(2, len(scope), frozenset(rel)), inner_omega)
        where = dict(zip(J.portals, scope))
        mp = []
        for v in range(J.n):
            if v in where:
                mp.append(where[v])
            else:
                mp.append(n)
                n += 1
        edges += [(mp[u], mp[v]) for u, v in J.edges]
        placed.append((mp, J, alpha))
        alphas.append(alpha)
    z_prime = z - always_bad + sum(alphas)
    list_edges = len(edges)
    apex = n
    n += 1
    one, two = frozenset({1}), frozenset({2})
    for mp, J, alpha in placed:
        ports = set(J.portals)
        for v in range(J.n):
            if v in ports:
                continue
            lst, x = J.lists[v], mp[v]
            if lst == one:
                k = alpha + omega + 1
                edges += [(x, w) for w in range(n, n + k)]
                edges += [(w, apex) for w in range(n, n + k)]
                n += k
            elif lst == two:
                k = alpha + 2
                edges += [(x, w) for w in range(n, n + k)]
                edges += [(w, w + k) for w in range(n, n + k)]
                edges += [(w, apex) for w in range(n + k, n + 2 * k)]
                n += 2 * k
            elif not lst:
                raise ValueError("empty list inside a realizer")
    g = Graph(n, frozenset((u, v) if u < v else (v, u) for u, v in edges))
    hub = tight_hub(g, list(range(inst.n)) + [apex])
    return MaxCutSynthesis(g, g.m - z_prime, hub, z, z_prime, tuple(alphas), apex, list_edges)


def min_mono_hub(g: Graph, hub: Iterable[int], q: int = 2, max_hub: int = 20) -> int:
    """Exact minimum number of monochromatic edges under a q-coloring.

    Every hub coloring is scored at once: components of G - hub become tables
    over their hub neighbours, shared between identically shaped components.
    """
    hub = sorted(set(hub))
    if len(hub) > max_hub:
        raise GadgetTooLarge(f"hub of size {len(hub)} above {max_hub}")
    full = frozenset(range(1, q + 1))
    tab = edge_cost_table(g.n, q, g.edges, [full] * g.n, hub, hub, max_table=max(q ** len(hub), MAX_TABLE))
    return int(tab.min()) if tab.size else 0


def max_cut_hub(g: Graph, hub: Iterable[int]) -> int:
    return g.m - min_mono_hub(g, hub, 2)


def brute_max_cut(g: Graph, cap: int = 20) -> int:
    if g.n > cap:
        raise GadgetTooLarge(f"n={g.n} above brute cap {cap}")
    best = 0
    es = g.sorted_edges
    for mask in range(1 << max(g.n - 1, 0)):
        best = max(best, sum(1 for u, v in es if (mask >> u & 1) != (mask >> v & 1)))
    return best


# ---------------------------------------------------------------- text format

def serialize_gadget(gad: Gadget) -> str:
    lines = [f"p {gad.n} {len(gad.edges)}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in gad.edges]
    lines.append("portal " + " ".join(str(v + 1) for v in gad.portals))
    full = frozenset(range(1, gad.q + 1))
    for v, lst in enumerate(gad.lists):
        if lst != full:
            lines.append(f"list {v + 1}: " + " ".join(map(str, sorted(lst))))
    return "\n".join(lines) + "\n"


def parse_gadget(text: str, q: int = 2) -> Gadget:
    """Graph file plus `portal v1 v2 ...` and `list v: colors` lines."""
    portals = None
    lists: dict = {}

    def extra(no, tok, n):
        nonlocal portals
        if tok[0] == "portal":
            portals = [_int(t, no) - 1 for t in tok[1:]]
            if any(not 0 <= v < n for v in portals):
                raise ParseError(no, "vertex id out of range")
            return True
        if tok[0] == "list":
            if len(tok) < 2 or not tok[1].endswith(":"):
                raise ParseError(no, "expected 'list v: colors'")
            v = _int(tok[1][:-1], no) - 1
            if not 0 <= v < n:
                raise ParseError(no, "vertex id out of range")
            cols = frozenset(_int(t, no) for t in tok[2:])
            if any(not 1 <= c <= q for c in cols):
                raise ParseError(no, "color out of range")
            lists[v] = cols
            return True
        return False

    g = parse_graph_lines(text, extra)
    if portals is None:
        raise ParseError(0, "missing 'portal' line")
    if len(set(portals)) != len(portals):
        raise ParseError(0, "repeated portal")
    full = frozenset(range(1, q + 1))
    return Gadget(g.n, g.sorted_edges, tuple(lists.get(v, full) for v in range(g.n)),
                  tuple(portals), q)


def parse_relation(text: str) -> Relation:
    """`relation q r` header, then one tuple per line."""
    rows = [(no, line.split()) for no, line in _content_lines(text)]
    if not rows or rows[0][1][0] != "relation" or len(rows[0][1]) != 3:
        raise ParseError(rows[0][0] if rows else 0, "malformed header: expected 'relation q r'")
    no, tok = rows[0]
    q, r = _int(tok[1], no), _int(tok[2], no)
    tuples = []
    for no, tok in rows[1:]:
        if len(tok) != r:
            raise ParseError(no, f"tuple must have {r} entries")
        t = tuple(_int(x, no) for x in tok)
        if any(not 1 <= x <= q for x in t):
            raise ParseError(no, "value out of range")
        tuples.append(t)
    return Relation.of(q, r, tuples)


def serialize_relation(R: Relation) -> str:
    lines = [f"relation {R.q} {R.r}"] + [" ".join(map(str, t)) for t in sorted(R.tuples)]
    return "\n".join(lines) + "\n"
