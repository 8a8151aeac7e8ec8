"""Graph, hub and list data model plus the text formats.

Vertices are 0-based internally; every file format is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ComponentTooLarge, NeighborhoodTooLarge, ParseError


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {(u, v)} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(_norm_edge(u, v) for u, v in edges))

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges | {_norm_edge(u, v)})

    def components(self, vertices: Iterable[int]) -> list[frozenset]:
        """Connected components of the subgraph induced by `vertices`, by min id."""
        alive = set(vertices)
        out = []
        for s in sorted(alive):
            if s not in alive:
                continue
            comp = {s}
            alive.discard(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y in alive:
                        alive.discard(y)
                        comp.add(y)
                        stack.append(y)
            out.append(frozenset(comp))
        return out

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph relabelled to 0..k-1 in the given order."""
        idx = {v: i for i, v in enumerate(vertices)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph.from_edges(len(vertices), es), idx


@dataclass(frozen=True)
class HubDecomposition:
    hub: frozenset
    components: tuple[frozenset, ...]
    sigma: int
    delta: int
    boundaries: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def p(self) -> int:
        return len(self.hub)


def validate_hub(g: Graph, q_set: Iterable[int], sigma: int, delta: int) -> HubDecomposition:
    hub = frozenset(q_set)
    if any(not 0 <= v < g.n for v in hub):
        raise ValueError("hub vertex out of range")
    comps = g.components(v for v in range(g.n) if v not in hub)
    bounds = []
    for c in comps:
        if len(c) > sigma:
            raise ComponentTooLarge(c, len(c))
        nb = set()
        for v in c:
            nb.update(u for u in g.adj[v] if u in hub)
        if len(nb) > delta:
            raise NeighborhoodTooLarge(c, len(nb))
        bounds.append(tuple(sorted(nb)))
    return HubDecomposition(hub, tuple(comps), sigma, delta, tuple(bounds))


def tight_hub(g: Graph, q_set: Iterable[int]) -> HubDecomposition:
    """Validate a hub with sigma and delta set to the smallest values that work."""
    hub = frozenset(q_set)
    if any(not 0 <= v < g.n for v in hub):
        raise ValueError("hub vertex out of range")
    comps = g.components(v for v in range(g.n) if v not in hub)
    bounds = []
    for c in comps:
        nb = set()
        for v in c:
            nb.update(u for u in g.adj[v] if u in hub)
        bounds.append(tuple(sorted(nb)))
    sigma = max((len(c) for c in comps), default=0)
    delta = max((len(b) for b in bounds), default=0)
    return HubDecomposition(hub, tuple(comps), sigma, delta, tuple(bounds))


def greedy_hub(g: Graph, sigma: int, delta: int) -> frozenset:
    """Grow Q one vertex at a time until it validates.

    The vertex added is the one of highest degree inside the first offending
    component (ties to the smaller id). Not minimal in general.
    """
    hub: set[int] = set()
    while True:
        offender = None
        for c in g.components(v for v in range(g.n) if v not in hub):
            nb = {u for v in c for u in g.adj[v] if u in hub}
            if len(c) > sigma or len(nb) > delta:
                offender = c
                break
        if offender is None:
            return frozenset(hub)
        best = min(offender, key=lambda v: (-len(g.adj[v] & offender), v))
        hub.add(best)


@dataclass(frozen=True)
class ListAssignment:
    q: int
    lists: tuple[frozenset, ...]

    def __post_init__(self):
        for lst in self.lists:
            if any(not 1 <= c <= self.q for c in lst):
                raise ValueError(f"list {sorted(lst)} not inside [1..{self.q}]")

    @classmethod
    def full(cls, n: int, q: int) -> "ListAssignment":
        f = frozenset(range(1, q + 1))
        return cls(q, tuple(f for _ in range(n)))

    def __getitem__(self, v: int) -> frozenset:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(0, max((len(b) for b in self.bags), default=0) - 1)

    def check(self, g: Graph) -> bool:
        """Assert the three decomposition axioms."""
        covered = set().union(*self.bags) if self.bags else set()
        if any(v not in covered for v in range(g.n)):
            return False
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                return False
        nb = {i: set() for i in range(len(self.bags))}
        for a, b in self.tree_edges:
            nb[a].add(b)
            nb[b].add(a)
        for v in covered:
            holders = {i for i, b in enumerate(self.bags) if v in b}
            start = next(iter(holders))
            seen, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in nb[x]:
                    if y in holders and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != holders:
                return False
        return True


def hub_to_tree_decomposition(h: HubDecomposition, g: Graph) -> TreeDecomposition:
    bags = [h.hub] + [h.hub | c for c in h.components]
    edges = tuple((0, i) for i in range(1, len(bags)))
    return TreeDecomposition(tuple(bags), edges)


# ---------------------------------------------------------------- file formats

def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(no, f"expected integer, got {tok!r}") from None


def parse_graph_lines(text: str, extra=None) -> Graph:
    """Parse a graph file; `extra(no, tokens)` may consume unknown line kinds."""
    n = None
    edges = set()
    for no, line in _content_lines(text):
        tok = line.split()
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            nums = [t for t in tok[1:] if not t.isalpha()]
            if n is not None or len(nums) != 2:
                raise ParseError(no, "malformed header")
            n = _int(nums[0], no)
            if n < 0:
                raise ParseError(no, "malformed header")
            continue
        if n is None:
            raise ParseError(no, "malformed header: missing 'p' line")
        if tok[0] == "e":
            if len(tok) != 3:
                raise ParseError(no, "edge line needs two endpoints")
            u, v = _int(tok[1], no), _int(tok[2], no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(no, "vertex id out of range")
            if u == v:
                raise ParseError(no, "self-loop")
            edges.add(_norm_edge(u - 1, v - 1))
        elif extra is not None and extra(no, tok, n):
            continue
        else:
            raise ParseError(no, f"unknown line kind {tok[0]!r}")
    if n is None:
        raise ParseError(0, "malformed header: missing 'p' line")
    return Graph(n, frozenset(edges))


def parse_graph(text: str) -> Graph:
    return parse_graph_lines(text)


def serialize_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges]
    return "\n".join(lines) + "\n"


def parse_hub(text: str) -> tuple[frozenset, int, int]:
    toks = []
    header = None
    for no, line in _content_lines(text):
        tok = line.split()
        if header is None:
            if tok[0] != "hub" or len(tok) != 4:
                raise ParseError(no, "malformed header: expected 'hub p sigma delta'")
            header = [_int(t, no) for t in tok[1:]]
            continue
        toks += [(no, t) for t in tok]
    if header is None:
        raise ParseError(0, "missing hub header")
    p, sigma, delta = header
    if len(toks) != p:
        raise ParseError(toks[-1][0] if toks else 0, f"expected {p} hub ids, got {len(toks)}")
    ids = []
    for no, t in toks:
        v = _int(t, no)
        if v < 1:
            raise ParseError(no, "vertex id out of range")
        ids.append(v - 1)
    return frozenset(ids), sigma, delta


def serialize_hub(hub: Iterable[int], sigma: int, delta: int) -> str:
    ids = sorted(hub)
    return f"hub {len(ids)} {sigma} {delta}\n" + " ".join(str(v + 1) for v in ids) + "\n"


def parse_lists(text: str, n: int, q: int) -> ListAssignment:
    lists = [frozenset(range(1, q + 1)) for _ in range(n)]
    for no, line in _content_lines(text):
        if ":" not in line:
            raise ParseError(no, "expected '<v>: <colors>'")
        head, rest = line.split(":", 1)
        v = _int(head.strip(), no)
        if not 1 <= v <= n:
            raise ParseError(no, "vertex id out of range")
        cols = [_int(t, no) for t in rest.split()]
        if any(not 1 <= c <= q for c in cols):
            raise ParseError(no, "color out of range")
        lists[v - 1] = frozenset(cols)
    return ListAssignment(q, tuple(lists))


def serialize_lists(L: ListAssignment) -> str:
    full = frozenset(range(1, L.q + 1))
    out = []
    for v, lst in enumerate(L.lists):
        if lst != full:
            out.append(f"{v + 1}: " + " ".join(map(str, sorted(lst))))
    return "\n".join(out) + ("\n" if out else "")
