"""Max-CSP model and the derandomization toolkit.

Domain values are 1..d. Variables are 0-based; files are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import BlockTooLarge, InstanceTooLarge, ParseError


@dataclass(frozen=True)
class MaxCsp:
    n: int
    d: int
    constraints: tuple  # of (scope tuple, frozenset of tuples)
    free: frozenset = frozenset()  # padding variables

    def __post_init__(self):
        for scope, rel in self.constraints:
            if len(set(scope)) != len(scope):
                raise ValueError("repeated variable in scope")
            if any(not 0 <= v < self.n for v in scope):
                raise ValueError("scope variable out of range")
            for t in rel:
                if len(t) != len(scope) or any(not 1 <= x <= self.d for x in t):
                    raise ValueError(f"tuple {t} outside [{self.d}]^{len(scope)}")

    @property
    def arity(self) -> int:
        return max((len(s) for s, _ in self.constraints), default=0)

    def violations(self, assignment: Sequence[int]) -> int:
        return sum(1 for s, rel in self.constraints
                   if tuple(assignment[v] for v in s) not in rel)


def oracle_maxcsp(inst: MaxCsp, cap: int = 2_000_000) -> tuple[tuple, int]:
    """Lexicographically first assignment with the fewest violated constraints."""
    if inst.d ** inst.n > cap:
        raise InstanceTooLarge(f"d^n = {inst.d ** inst.n} above cap")
    best = None
    for a in product(range(1, inst.d + 1), repeat=inst.n):
        v = inst.violations(a)
        if best is None or v < best[1]:
            best = (a, v)
            if v == 0:
                break
    return best


# ---------------------------------------------------------------- SAT grouping

@dataclass(frozen=True)
class Cnf:
    nvars: int
    clauses: tuple  # of tuples of nonzero ints (DIMACS literals)


def parse_cnf(text: str) -> Cnf:
    nvars = None
    clauses = []
    cur: list = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            tok = line.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError(no, "malformed header")
            nvars = int(tok[2])
            continue
        if nvars is None:
            raise ParseError(no, "malformed header: missing 'p cnf'")
        for t in line.split():
            try:
                lit = int(t)
            except ValueError:
                raise ParseError(no, f"expected literal, got {t!r}") from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                if abs(lit) > nvars:
                    raise ParseError(no, "variable id out of range")
                cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if nvars is None:
        raise ParseError(0, "missing 'p cnf' header")
    return Cnf(nvars, tuple(clauses))


def oracle_maxsat(cnf: Cnf) -> int:
    """Minimum number of falsified clauses, by enumeration."""
    best = len(cnf.clauses)
    for bits in product((False, True), repeat=cnf.nvars):
        bad = sum(1 for cl in cnf.clauses
                  if not any(bits[abs(l) - 1] == (l > 0) for l in cl))
        best = min(best, bad)
    return best


def group_sat(cnf: Cnf, p: int) -> MaxCsp:
    """Blocks of p Boolean variables become one variable over [2^p].

    Block value 1 + sum(bit_j * 2^j) encodes the valuation of the block,
    bit_j = 1 meaning the j-th variable of the block is true.
    """
    if any(len(cl) > 3 for cl in cnf.clauses):
        raise ValueError("clause with more than 3 literals")
    nblocks = -(-cnf.nvars // p) if cnf.nvars else 0
    pad = frozenset(range(cnf.nvars, nblocks * p))
    free_blocks = frozenset(b for b in range(nblocks) if all(b * p + j in pad for j in range(p)))
    cons = []
    for cl in cnf.clauses:
        blocks = sorted({(abs(l) - 1) // p for l in cl})
        rel = set()
        for vals in product(range(1 << p), repeat=len(blocks)):
            bv = dict(zip(blocks, vals))

            def truth(l):
                x = abs(l) - 1
                return bool((bv[x // p] >> (x % p)) & 1) == (l > 0)

            if any(truth(l) for l in cl):
                rel.add(tuple(v + 1 for v in vals))
        cons.append((tuple(blocks), frozenset(rel)))
    return MaxCsp(nblocks, 1 << p, tuple(cons), free_blocks)


# ---------------------------------------------------------------- covering family

def _block_cover(d_prime: int, d: int, m: int, exact: bool, cap: int) -> list:
    subsets = [frozenset(s) for s in combinations(range(1, d_prime + 1), d)]
    if len(subsets) ** m * d_prime ** m > cap:
        raise BlockTooLarge(f"C({d_prime},{d})^{m} * {d_prime}^{m} above cap {cap}")
    cells = list(product(range(1, d_prime + 1), repeat=m))
    cands = list(product(subsets, repeat=m))
    covers = [frozenset(c for c in cells if all(x in D for x, D in zip(c, cand)))
              for cand in cands]
    if exact:
        universe = frozenset(cells)
        for k in range(1, len(cands) + 1):
            for pick in combinations(range(len(cands)), k):
                if frozenset().union(*(covers[i] for i in pick)) == universe:
                    return [cands[i] for i in pick]
    uncovered = set(cells)
    chosen = []
    while uncovered:
        i = max(range(len(cands)), key=lambda j: (len(covers[j] & uncovered), -j))
        chosen.append(cands[i])
        uncovered -= covers[i]
    return chosen


@dataclass(frozen=True)
class ProductCover:
    """Product of per-block covers; members are n-tuples of d-subsets of [d']."""
    d_prime: int
    d: int
    n: int
    blocks: tuple  # ((block width, tuple of block members), ...)

    def __len__(self) -> int:
        size = 1
        for _, members in self.blocks:
            size *= len(members)
        return size

    def __iter__(self) -> Iterator[tuple]:
        for parts in product(*(members for _, members in self.blocks)):
            yield tuple(D for part in parts for D in part)

    def covers(self, t: Sequence[int]) -> bool:
        return any(all(x in D for x, D in zip(t, member)) for member in self)


def covering_family(d_prime: int, d: int, n: int, m: int = 1, exact: bool = False,
                    cap: int = 10 ** 6) -> ProductCover:
    if not 1 <= d <= d_prime or m < 1 or n < 0:
        raise ValueError("need 1 <= d <= d' and m >= 1")
    blocks = []
    full, rest = divmod(n, m)
    if full:
        cov = tuple(_block_cover(d_prime, d, m, exact, cap))
        blocks += [(m, cov)] * full
    if rest:
        blocks.append((rest, tuple(_block_cover(d_prime, d, rest, exact, cap))))
    return ProductCover(d_prime, d, n, tuple(blocks))


def restrict_domains(inst: MaxCsp, member: Sequence[frozenset]) -> MaxCsp:
    """Keep only values in member[v] for each v, relabelled to 1..d in order."""
    if len(member) != inst.n:
        raise ValueError("member length differs from variable count")
    sizes = {len(D) for D in member}
    if len(sizes) > 1:
        raise ValueError("member sets of different sizes")
    d = sizes.pop() if sizes else inst.d
    label = [{x: i + 1 for i, x in enumerate(sorted(D))} for D in member]
    cons = []
    for scope, rel in inst.constraints:
        new = frozenset(tuple(label[v][x] for v, x in zip(scope, t)) for t in rel
                        if all(x in label[v] for v, x in zip(scope, t)))
        cons.append((scope, new))
    return MaxCsp(inst.n, d, tuple(cons), inst.free)


def lift_assignment(member: Sequence[frozenset], assignment: Sequence[int]) -> tuple:
    return tuple(sorted(D)[a - 1] for D, a in zip(member, assignment))


# ---------------------------------------------------------------- structured split

def structured_split(inst: MaxCsp, b: int) -> Iterator[tuple[tuple, MaxCsp]]:
    """Yield (signature, instance) for every f in {0..b}^(n/b).

    In each yielded instance block i holds exactly f_i variables set to d,
    and every constraint is widened to the union of the blocks it touches.
    """
    if b < 1:
        raise ValueError("b must be positive")
    d = inst.d
    nb = -(-inst.n // b)
    n = nb * b
    free = inst.free | frozenset(range(inst.n, n))
    blocks = [tuple(range(i * b, (i + 1) * b)) for i in range(nb)]
    for f in product(range(b + 1), repeat=nb):
        cons = []
        for i, blk in enumerate(blocks):
            rel = frozenset(t for t in product(range(1, d + 1), repeat=b)
                            if sum(1 for x in t if x == d) == f[i])
            cons.append((blk, rel))
        merged: dict = {}
        for scope, rel in inst.constraints:
            bids = sorted({v // b for v in scope})
            wide = tuple(v for i in bids for v in blocks[i])
            pos = [wide.index(v) for v in scope]
            new = set()
            for t in product(range(1, d + 1), repeat=len(wide)):
                if tuple(t[j] for j in pos) not in rel:
                    continue
                if all(sum(1 for x in t[k * b:(k + 1) * b] if x == d) == f[i]
                       for k, i in enumerate(bids)):
                    new.add(t)
            if wide in merged:
                merged[wide] &= new
            else:
                merged[wide] = new
        cons += [(s, frozenset(r)) for s, r in merged.items()]
        yield f, MaxCsp(n, d, tuple(cons), free)


# ---------------------------------------------------------------- text format

def parse_maxcsp(text: str) -> MaxCsp:
    toks = []
    for no, raw in enumerate(text.splitlines(), start=1):
        toks += [(no, t) for t in raw.split("#", 1)[0].split()]
    if len(toks) < 3 or toks[0][1] != "maxcsp":
        raise ParseError(toks[0][0] if toks else 0, "malformed header: expected 'maxcsp n d'")
    pos = 1

    def num():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(toks[-1][0], "unexpected end of input")
        no, t = toks[pos]
        pos += 1
        try:
            return no, int(t)
        except ValueError:
            raise ParseError(no, f"expected integer, got {t!r}") from None

    n, d = num()[1], num()[1]
    cons = []
    while pos < len(toks):
        no, kw = toks[pos]
        pos += 1
        if kw != "c":
            raise ParseError(no, "expected 'c'")
        k = num()[1]
        scope = []
        for _ in range(k):
            no, v = num()
            if not 1 <= v <= n:
                raise ParseError(no, "variable id out of range")
            scope.append(v - 1)
        t = num()[1]
        rel = set()
        for _ in range(t):
            tup = []
            for _ in range(k):
                no, x = num()
                if not 1 <= x <= d:
                    raise ParseError(no, "value out of range")
                tup.append(x)
            rel.add(tuple(tup))
        cons.append((tuple(scope), frozenset(rel)))
    return MaxCsp(n, d, tuple(cons))


def serialize_maxcsp(inst: MaxCsp) -> str:
    lines = [f"maxcsp {inst.n} {inst.d}"]
    for scope, rel in inst.constraints:
        head = f"c {len(scope)} " + " ".join(str(v + 1) for v in scope) + f" {len(rel)}"
        lines.append(head.replace("  ", " "))
        lines += [" ".join(map(str, t)) for t in sorted(rel)]
    return "\n".join(lines) + "\n"
