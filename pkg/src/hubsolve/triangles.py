"""Triangle packing with a hub: the equality gadget, splitters and the precolored solver."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import BadArity, InstanceTooLarge, ParamsTooLarge
from .graph import Graph, HubDecomposition, validate_hub
from .setsys import SetSystem, elems_of, oracle_set


def triangles(g: Graph, within=None) -> list:
    """Sorted vertex triples forming triangles, optionally inside a vertex set."""
    keep = None if within is None else set(within)
    out = []
    for u, v in g.sorted_edges:
        if keep is not None and (u not in keep or v not in keep):
            continue
        for w in g.adj[u] & g.adj[v]:
            if w > v and (keep is None or w in keep):
                out.append((u, v, w))
    return sorted(out)


def max_packing(tris: Sequence[tuple], want_witness: bool = False):
    """Exact maximum packing among `tris` by branching on the lowest vertex."""
    by: dict = {}
    for t in tris:
        for v in t:
            by.setdefault(v, []).append(t)

    @lru_cache(maxsize=None)
    def best(alive: frozenset) -> int:
        live = [v for v in sorted(alive) if any(set(t) <= alive for t in by.get(v, ()))]
        if not live:
            return 0
        v = live[0]
        val = best(alive - {v})
        for t in by[v]:
            if set(t) <= alive:
                val = max(val, 1 + best(alive - set(t)))
        return val

    verts = frozenset(by)
    val = best(verts)
    if not want_witness:
        return val
    out, alive = [], verts
    while best(alive):
        v = min(v for v in alive if any(set(t) <= alive for t in by.get(v, ())))
        if best(alive - {v}) == best(alive):
            alive = alive - {v}
            continue
        for t in by[v]:
            if set(t) <= alive and 1 + best(alive - set(t)) == best(alive):
                out.append(t)
                alive = alive - set(t)
                break
    return val, out


def oracle_triangle_packing(g: Graph, cap: int = 20, n_cap: int = 12) -> int:
    tris = triangles(g)
    if len(tris) > cap and g.n > n_cap:
        raise InstanceTooLarge(f"{len(tris)} triangles and n={g.n} above caps")
    return max_packing(tris)


def has_triangle_partition(g: Graph) -> bool:
    """Exact cover of V by triangles, branching on the vertex with fewest live triangles."""
    if g.n % 3:
        return False
    by: list = [[] for _ in range(g.n)]
    for a, b, c in triangles(g):
        m = 1 << a | 1 << b | 1 << c
        for v in (a, b, c):
            by[v].append(m)
    if any(not ts for ts in by):
        return False

    @lru_cache(maxsize=None)
    def go(left: int) -> bool:
        if not left:
            return True
        best = None
        rest = left
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            opts = [m for m in by[v] if m & left == m]
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
        return any(go(left & ~m) for m in best)

    ok = go((1 << g.n) - 1)
    go.cache_clear()
    return ok


def is_packing(tris: Sequence[tuple], g: Optional[Graph] = None) -> bool:
    seen = set()
    for t in tris:
        if len(set(t)) != 3 or seen & set(t):
            return False
        if g is not None and not all(g.has_edge(a, b) for a, b in combinations(t, 2)):
            return False
        seen |= set(t)
    return True


# ---------------------------------------------------------------- equality gadget

@dataclass(frozen=True)
class TriGadget:
    graph: Graph
    portals: tuple
    families: tuple  # (P1, P2, P3) as tuples of triangles


def build_trieq(r: int) -> TriGadget:
    """Vertices P = 0..r-1, Q = r..2r-1, A = 2r..3r-1, B = 3r..4r-1; portals P."""
    if r < 3 or r % 3:
        raise BadArity(f"r={r}: need r >= 3 and r divisible by 3")
    P = list(range(r))
    Q = [r + i for i in range(r)]
    A = [2 * r + i for i in range(r)]
    B = [3 * r + i for i in range(r)]
    p1 = tuple(tuple(sorted((A[i], B[i], P[i]))) for i in range(r))
    p2 = tuple(tuple(sorted((Q[i], B[i], A[(i + 1) % r]))) for i in range(r))
    p3 = tuple(tuple(sorted(Q[3 * i:3 * i + 3])) for i in range(r // 3))
    es = set()
    for t in p1 + p2 + p3:
        es.update(combinations(t, 2))
    return TriGadget(Graph.from_edges(4 * r, es), tuple(P), (p1, p2, p3))


def covering_packings(g: Graph, must: Sequence[int]) -> list:
    """All maximal triangle packings that cover every vertex of `must`."""
    tris = triangles(g)
    must = set(must)
    found = []

    def rec(i: int, used: set, chosen: list):
        if i == len(tris):
            if must <= used and all(used & set(t) for t in tris):
                found.append(tuple(chosen))
            return
        t = tris[i]
        if not used & set(t):
            rec(i + 1, used | set(t), chosen + [t])
        rec(i + 1, used, chosen)

    rec(0, set(), [])
    return found


def reduce_partition_to_triangle(inst: SetSystem) -> tuple[Graph, HubDecomposition]:
    """Universe vertices 0..n-1 form the hub; one equality gadget per set."""
    if inst.variant != "partition-eq" or inst.d % 3:
        raise BadArity("partition-eq with set size divisible by 3 required")
    r = inst.d
    n = inst.n
    gad = build_trieq(r)
    es = []
    nxt = n
    for s in inst.family:
        elems = [e - 1 for e in elems_of(s)]
        mp = {p: elems[i] for i, p in enumerate(gad.portals)}
        for v in range(gad.graph.n):
            if v not in mp:
                mp[v] = nxt
                nxt += 1
        es += [(mp[u], mp[v]) for u, v in gad.graph.edges]
    g = Graph.from_edges(nxt, es)
    return g, validate_hub(g, range(n), 4 * r, r)


# ---------------------------------------------------------------- splitters

@dataclass(frozen=True)
class SplitterFamily:
    N: int
    p: int
    ell: int
    members: tuple  # colorings as tuples of colors 1..ell
    backend: str
    seed: int = 0
    reps: int = 0

    def __len__(self) -> int:
        return len(self.members)


def balanced_probability(p: int, ell: int) -> float:
    """Chance that a uniform coloring splits a fixed p-set as evenly as possible."""
    lo, extra = divmod(p, ell)
    ways = math.comb(ell, extra) * math.factorial(p) \
        // (math.factorial(lo + 1) ** extra * math.factorial(lo) ** (ell - extra))
    return ways / ell ** p


def _balanced_rows(cols: np.ndarray, subsets: np.ndarray, ell: int) -> np.ndarray:
    counts = np.zeros((len(subsets), ell), dtype=np.int64)
    picked = cols[subsets] - 1
    for j in range(subsets.shape[1]):
        np.add.at(counts, (np.arange(len(subsets)), picked[:, j]), 1)
    return counts.max(axis=1) - counts.min(axis=1) <= 1


def is_splitter(members: Sequence[Sequence[int]], N: int, p: int, ell: int) -> bool:
    subsets = np.array(list(combinations(range(N), p)), dtype=np.int64).reshape(-1, p)
    ok = np.zeros(len(subsets), dtype=bool)
    for m in members:
        ok |= _balanced_rows(np.asarray(m), subsets, ell)
    return bool(ok.all())


@lru_cache(maxsize=64)
def build_splitter(N: int, p: int, ell: int, backend: str = "exhaustive", seed: int = 0,
                   reps: Optional[int] = None, cap: int = 20_000,
                   candidates: int = 16) -> SplitterFamily:
    if not 0 <= p <= N or not 1 <= ell <= max(p, 1):
        raise ValueError("need p <= N and 1 <= ell <= p")
    rng = np.random.default_rng(seed)
    if ell == 1 or p == 0:
        return SplitterFamily(N, p, ell, ((1,) * N,), backend, seed, 1)
    if backend == "mc":
        prob = balanced_probability(p, ell)
        if reps is None:
            reps = max(1, math.ceil(20 * math.log(2) / -math.log1p(-prob))) if prob < 1 else 1
        members = tuple(tuple(int(x) for x in rng.integers(1, ell + 1, N)) for _ in range(reps))
        return SplitterFamily(N, p, ell, members, backend, seed, reps)
    if backend != "exhaustive":
        raise ValueError(f"unknown splitter backend {backend!r}")
    total = math.comb(N, p)
    if total > cap:
        raise ParamsTooLarge(f"C({N},{p}) = {total} p-subsets above exhaustive cap {cap}")
    subsets = np.array(list(combinations(range(N), p)), dtype=np.int64).reshape(-1, p)
    todo = np.ones(len(subsets), dtype=bool)
    members = []
    base = np.array([1 + i % ell for i in range(p)])
    while todo.any():
        first = subsets[np.argmax(todo)]
        live = subsets[todo]
        best, gain = None, -1
        for _ in range(candidates):
            cols = rng.integers(1, ell + 1, N)
            cols[first] = rng.permutation(base)  # split the first open subset
            g = int(_balanced_rows(cols, live, ell).sum())
            if g > gain:
                best, gain = cols, g
        members.append(tuple(int(x) for x in best))
        todo[todo] = ~_balanced_rows(best, live, ell)
    fam = SplitterFamily(N, p, ell, tuple(members), backend, seed, len(members))
    assert is_splitter(fam.members, N, p, ell)
    return fam


# ---------------------------------------------------------------- precolored packing

@dataclass(frozen=True)
class PrecoloredInstance:
    graph: Graph
    t: int
    hub: frozenset
    psi: tuple  # color per element; components first, then hub triangles
    c: int
    components: tuple = field(default=None, compare=False)
    hub_triangles: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.components is None:
            comps = tuple(self.graph.components(v for v in range(self.graph.n)
                                                if v not in self.hub))
            object.__setattr__(self, "components", comps)
        if self.hub_triangles is None:
            object.__setattr__(self, "hub_triangles", tuple(triangles(self.graph, self.hub)))
        if self.c < 1:
            raise ValueError("capacity c must be positive")
        k = len(self.components) + len(self.hub_triangles)
        if len(self.psi) != k:
            raise ValueError(f"coloring covers {len(self.psi)} elements, expected {k}")
        if any(not 1 <= x <= self.colors for x in self.psi):
            raise ValueError("color outside 1..ceil(|Q|/c)")

    @property
    def colors(self) -> int:
        return max(1, -(-len(self.hub) // self.c))


@dataclass(frozen=True)
class PackingResult:
    verdict: bool
    packing: tuple = ()
    members_tried: int = 0


def active_counts(inst: PrecoloredInstance, packing: Sequence[tuple]) -> dict:
    """Active elements per color under a packing."""
    where = {}
    for i, comp in enumerate(inst.components):
        for v in comp:
            where[v] = i
    hub_tri = {t: len(inst.components) + j for j, t in enumerate(inst.hub_triangles)}
    act = set()
    for t in packing:
        t = tuple(sorted(t))
        if t in hub_tri:
            act.add(hub_tri[t])
        elif any(v in inst.hub for v in t):
            act.update(where[v] for v in t if v not in inst.hub)
    out: dict = {}
    for e in act:
        out[inst.psi[e]] = out.get(inst.psi[e], 0) + 1
    return out


def check_precolored_witness(inst: PrecoloredInstance, packing: Sequence[tuple]) -> bool:
    return (is_packing(packing, inst.graph) and len(packing) >= inst.t
            and all(k <= inst.c for k in active_counts(inst, packing).values()))


def _color_options(inst: PrecoloredInstance, color: int, sigma: int) -> tuple[int, dict]:
    """X_i and, per hub footprint T, the best packing of color `color` using exactly T."""
    g, hub, c = inst.graph, inst.hub, inst.c
    comp_ids = [i for i, x in enumerate(inst.psi[:len(inst.components)]) if x == color]
    comps = [inst.components[i] for i in comp_ids]
    owner = {v: k for k, comp in enumerate(comps) for v in comp}
    inner = [triangles(g, comp) for comp in comps]

    @lru_cache(maxsize=None)
    def local(k: int, blocked: frozenset):
        tris = [t for t in inner[k] if not blocked & set(t)]
        return max_packing(tris, want_witness=True)

    X = sum(local(k, frozenset())[0] for k in range(len(comps)))
    moves = []  # (triangle, active element key)
    for k, comp in enumerate(comps):
        near = {u for v in comp for u in g.adj[v] if u in hub}
        for t in triangles(g, set(comp) | near):
            if any(v in hub for v in t):
                moves.append((t, ("C", k)))
    for j, t in enumerate(inst.hub_triangles):
        if inst.psi[len(inst.components) + j] == color:
            moves.append((t, ("D", j)))
    limit = 2 * c * max(sigma, 2)
    best: dict = {}

    def rec(i: int, used: frozenset, act: frozenset, chosen: tuple):
        if i == len(moves):
            T = frozenset(v for v in used if v in hub)
            val, wit = len(chosen), list(chosen)
            for k in range(len(comps)):
                v, w = local(k, used & frozenset(comps[k]))
                val += v
                wit += w
            if T not in best or val > best[T][0]:
                best[T] = (val, tuple(sorted(wit)))
            return
        rec(i + 1, used, act, chosen)
        t, key = moves[i]
        if used & set(t):
            return
        act2 = act | {key}
        if len(act2) > c:
            return
        foot = sum(1 for v in used | set(t) if v in hub)
        if foot > limit:
            return
        rec(i + 1, used | set(t), act2, chosen + (t,))

    rec(0, frozenset(), frozenset(), ())
    return X, best


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple]:
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for x in range(max(0, total - rest), min(caps[0], total) + 1):
        for tail in _compositions(total - x, caps[1:]):
            yield (x,) + tail


def solve_precolored(inst: PrecoloredInstance) -> PackingResult:
    """Offset tuples over colors, each turned into a bounded-size set packing instance."""
    ell = inst.colors
    sigma = max((len(c) for c in inst.components), default=1)
    X, opts = [], []
    for i in range(1, ell + 1):
        x, best = _color_options(inst, i, sigma)
        for T, (val, wit) in best.items():
            # every option is re-verified before it may enter a set family
            sub = [t for t in wit]
            assert is_packing(sub, inst.graph) and len(sub) == val
            assert {v for t in sub for v in t if v in inst.hub} <= T
        X.append(x)
        opts.append(best)
    need = inst.t - sum(X)
    if need <= 0:
        wit = tuple(t for b in opts for t in b[frozenset()][1])
        assert check_precolored_witness(inst, wit)
        return PackingResult(True, wit)
    hub = sorted(inst.hub)
    bit = {v: ell + k for k, v in enumerate(hub)}
    U = ell + len(hub)
    caps = [min(inst.c * sigma, max(v for v, _ in b.values()) - x) for b, x in zip(opts, X)]
    # raising an offset only shrinks the families, so sums above `need` are dominated
    for q in _compositions(need, caps):
        fam, source = [], {}
        for i in range(ell):
            for T, (val, wit) in opts[i].items():
                if val >= X[i] + q[i]:
                    m = 1 << i
                    for v in T:
                        m |= 1 << bit[v]
                    fam.append(m)
                    source[m] = wit
        d = max(bin(m).count("1") for m in fam)
        res = oracle_set(SetSystem(U, tuple(fam), "packing-le-sets", d, ell), cap=None)
        if res.verdict:
            wit = tuple(sorted(t for m in res.witness for t in source[m]))
            assert check_precolored_witness(inst, wit)
            return PackingResult(True, wit)
    return PackingResult(False)


def solve_triangle_packing(g: Graph, h: HubDecomposition, t: int, c: int,
                           splitter: str = "exhaustive", seed: int = 0) -> PackingResult:
    """Is there a packing of at least t triangles? Splitter members drive the precolored solver."""
    if c < 1:
        raise ValueError("capacity c must be positive")
    if t <= 0:
        return PackingResult(True)
    hub = set(h.hub)
    comps = g.components(v for v in range(g.n) if v not in hub)
    if not hub:
        wit = []
        for comp in comps:
            wit += max_packing(triangles(g, comp), want_witness=True)[1]
        return PackingResult(len(wit) >= t, tuple(wit) if len(wit) >= t else ())
    pad = -len(hub) % c
    g2 = Graph(g.n + pad, g.edges)
    hub2 = frozenset(hub | set(range(g.n, g.n + pad)))
    p = len(hub2)
    ell = p // c
    tri_q = triangles(g2, hub2)
    N = len(comps) + len(tri_q)
    fam = build_splitter(max(N, p), p, ell, splitter, seed)
    for k, member in enumerate(fam.members, start=1):
        inst = PrecoloredInstance(g2, t, hub2, tuple(member[:N]), c, tuple(comps), tuple(tri_q))
        res = solve_precolored(inst)
        if res.verdict:
            assert is_packing(res.packing, g) and len(res.packing) >= t
            return PackingResult(True, res.packing, k)
    return PackingResult(False, (), len(fam.members))
