"""Set cover / partition / packing variants, bitmask DP oracles, reductions.

Elements are 1..n in files and bits 0..n-1 internally; sets are int masks.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import ceil, factorial
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CombinatorialBlowup, InstanceTooLarge, ParseError

VARIANTS = {
    # name: (size rule, objective)
    "cover-eq": ("eq", "cover"),
    "cover-le": ("le", "cover"),
    "partition-eq": ("eq", "partition"),
    "partition-le": ("le", "partition"),
    "partition-le-sets": ("le", "partition-sets"),
    "packing-eq-sets": ("eq", "packing-sets"),
    "packing-le-sets": ("le", "packing-sets"),
    "packing-le-union": ("le", "packing-union"),
}

G_CAP = 10 ** 6


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(elems: Iterable[int]) -> int:
    """1-based elements to a bitmask."""
    m = 0
    for e in elems:
        m |= 1 << (e - 1)
    return m


def elems_of(mask: int) -> list:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetSystem:
    n: int
    family: tuple
    variant: str
    d: int
    t: Optional[int] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        rule = VARIANTS[self.variant][0]
        object.__setattr__(self, "family", tuple(sorted(set(self.family))))
        for s in self.family:
            k = popcount(s)
            if s == 0 or s >> self.n:
                raise ValueError("set empty or outside the universe")
            if (rule == "eq" and k != self.d) or k > self.d:
                raise ValueError(f"set of size {k} violates the {rule} {self.d} bound")
        if VARIANTS[self.variant][1] not in ("partition",) and self.t is None:
            raise ValueError(f"variant {self.variant} needs a target t")

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    def covers_universe(self) -> bool:
        u = 0
        for s in self.family:
            u |= s
        return u == self.universe

    def require_cover(self) -> "SetSystem":
        if VARIANTS[self.variant][1] in ("cover", "partition", "partition-sets") \
                and not self.covers_universe():
            raise ValueError("family does not cover the universe")
        return self

    def with_(self, **kw) -> "SetSystem":
        fields = dict(n=self.n, family=self.family, variant=self.variant, d=self.d, t=self.t)
        fields.update(kw)
        return SetSystem(**fields)


# ---------------------------------------------------------------- DP oracles

def _by_elem(n, fam):
    by = [[] for _ in range(n)]
    for s in fam:
        for e in range(n):
            if s >> e & 1:
                by[e].append(s)
    return by


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _dp(n, fam, mode):
    """Memoized recursion on the lowest open element.

    mode 'cover': min sets covering mask; 'partition': min sets partitioning
    mask; 'pack-sets' / 'pack-union': best disjoint packing inside mask.
    Returns (value function, witness function).
    """
    by = _by_elem(n, fam)
    inf = float("inf")
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * n + 1000))

    @lru_cache(maxsize=None)
    def f(mask):
        if mask == 0:
            return 0
        e = _low(mask)
        if mode == "cover":
            return min((1 + f(mask & ~s) for s in by[e]), default=inf)
        if mode == "partition":
            return min((1 + f(mask & ~s) for s in by[e] if s & mask == s), default=inf)
        best = f(mask & ~(1 << e))
        for s in by[e]:
            if s & mask == s:
                w = 1 if mode == "pack-sets" else popcount(s)
                best = max(best, w + f(mask & ~s))
        return best

    def witness(mask):
        out = []
        while mask:
            e = _low(mask)
            v = f(mask)
            if mode in ("pack-sets", "pack-union") and f(mask & ~(1 << e)) == v:
                mask &= ~(1 << e)
                continue
            for s in by[e]:
                if mode != "cover" and s & mask != s:
                    continue
                w = 1 if mode != "pack-union" else popcount(s)
                if w + f(mask & ~s) == v:
                    out.append(s)
                    mask &= ~s
                    break
            else:
                raise AssertionError("witness reconstruction failed")
        return out

    return f, witness


@dataclass(frozen=True)
class SetResult:
    verdict: bool
    value: Optional[float]
    witness: tuple


def oracle_set(inst: SetSystem, cap: Optional[int] = 20) -> SetResult:
    if cap is not None and inst.n > cap:
        raise InstanceTooLarge(f"n={inst.n} above oracle cap {cap}")
    kind = VARIANTS[inst.variant][1]
    U = inst.universe
    fam = inst.family
    if kind == "cover":
        f, wit = _dp(inst.n, fam, "cover")
        v = f(U)
        ok = v <= inst.t
    elif kind in ("partition", "partition-sets"):
        f, wit = _dp(inst.n, fam, "partition")
        v = f(U)
        ok = v != float("inf") and (kind == "partition" or v <= inst.t)
    elif kind == "packing-sets":
        f, wit = _dp(inst.n, fam, "pack-sets")
        v = f(U)
        ok = v >= inst.t
    else:
        f, wit = _dp(inst.n, fam, "pack-union")
        v = f(U)
        ok = v >= inst.t
    w = tuple(wit(U)) if ok and v != float("inf") else ()
    f.cache_clear()
    return SetResult(ok, v, w)


def naive_oracle(inst: SetSystem) -> bool:
    """Enumerate every subfamily; independent of the DP."""
    kind = VARIANTS[inst.variant][1]
    fam = inst.family
    U = inst.universe
    for k in range(len(fam) + 1):
        for pick in combinations(fam, k):
            union, disjoint = 0, True
            for s in pick:
                if union & s:
                    disjoint = False
                union |= s
            if kind == "cover" and union == U and k <= inst.t:
                return True
            if kind == "partition" and disjoint and union == U:
                return True
            if kind == "partition-sets" and disjoint and union == U and k <= inst.t:
                return True
            if kind == "packing-sets" and disjoint and k >= inst.t:
                return True
            if kind == "packing-union" and disjoint and popcount(union) >= inst.t:
                return True
    return False


# ---------------------------------------------------------------- subset trick

def reduce_cover_to_partition_sets(inst: SetSystem) -> SetSystem:
    """Every nonempty subset of a member becomes a member."""
    assert inst.variant == "cover-le"
    fam = set()
    for s in inst.family:
        sub = s
        while sub:
            fam.add(sub)
            sub = (sub - 1) & s
    return SetSystem(inst.n, tuple(fam), "partition-le-sets", inst.d, inst.t)


def disjointify(cover: Sequence[int]) -> list:
    """Peel a cover into a partition: A_i = S_i minus everything before it."""
    seen, out = 0, []
    for s in cover:
        a = s & ~seen
        if a:
            out.append(a)
        seen |= s
    return out


# ---------------------------------------------------------------- block signatures

def reduce_packing_union_to_partition_sets(inst: SetSystem, b: int) -> Iterator[SetSystem]:
    """One partition-le-sets instance per block signature x with enough coverage.

    Block i of b elements gets a new element a_i; x_i counts the elements of
    block i left uncovered by the packing, which the extra set S + a_i takes.
    Signatures leaving fewer than t elements covered are skipped, and the
    set budget is vacuous (|U'|), so a partition exists iff a packing with
    exactly that uncovered pattern exists.
    """
    assert inst.variant == "packing-le-union" and b >= 1
    nb = -(-inst.n // b)
    n = nb * b
    n2 = n + nb
    for x in product(range(b + 1), repeat=nb):
        if n - sum(x) < inst.t:
            continue
        fam = list(inst.family)
        for i in range(nb):
            a = 1 << (n + i)
            for S in combinations(range(i * b, (i + 1) * b), x[i]):
                m = a
                for e in S:
                    m |= 1 << e
                fam.append(m)
        d = max(inst.d, b + 1)
        yield SetSystem(n2, tuple(fam), "partition-le-sets", d, n2)


# ---------------------------------------------------------------- join instances

def size_classes(fam: Sequence[int], d: int) -> list:
    cls = [[] for _ in range(d + 1)]
    for s in fam:
        cls[popcount(s)].append(s)
    return cls


def iter_signatures(fam: Sequence[int], d: int, n: int, min_w: int = 0,
                    max_w: Optional[int] = None) -> Iterator[tuple]:
    cls = size_classes(fam, d)
    hi = n if max_w is None else min(n, max_w)
    for r in product(*(range(len(cls[i]) + 1) for i in range(1, d + 1))):
        w = sum(r)
        if min_w <= w <= hi:
            yield r


def count_signatures(fam: Sequence[int], d: int, n: int, min_w: int = 0,
                     max_w: Optional[int] = None) -> int:
    """Closed-form count via the generating polynomial prod_i (1 + x + ... + x^|F_i|)."""
    cls = size_classes(fam, d)
    poly = [1]
    for i in range(1, d + 1):
        k = len(cls[i])
        new = [0] * (len(poly) + k)
        for a, c in enumerate(poly):
            for j in range(k + 1):
                new[a + j] += c
        poly = new
    hi = n if max_w is None else min(n, max_w)
    return sum(c for w, c in enumerate(poly) if min_w <= w <= hi)


@dataclass(frozen=True)
class JoinInstance:
    n: int               # |U_r|
    family: tuple        # F_r, all sets of size h
    alpha: int
    h: int
    dummy_elems: int     # |N_r|
    guard_elems: int     # |E_r|


def _disjoint_unions(pool: Sequence[int], k: int, cap: int) -> set:
    out = set()
    pool = sorted(pool)

    def rec(start, acc, left):
        if left == 0:
            out.add(acc)
            if len(out) > cap:
                raise CombinatorialBlowup(f"more than {cap} candidate unions")
            return
        for j in range(start, len(pool) - left + 1):
            if not pool[j] & acc:
                rec(j + 1, acc | pool[j], left - 1)

    rec(0, 0, k)
    return out


def build_join_instance(n: int, fam: Sequence[int], d: int, c: int, r: Sequence[int],
                        cap: int = G_CAP) -> JoinInstance:
    """Merge the size classes into uniform sets of size c*d!+1 for signature r."""
    cls = size_classes(fam, d)
    if len(r) != d or any(r[i - 1] > len(cls[i]) or r[i - 1] < 0 for i in range(1, d + 1)) \
            or sum(r) > n:
        raise ValueError(f"invalid signature {tuple(r)}")
    base = c * factorial(d)
    h = base + 1
    nxt = n
    out = set()
    alpha = 0
    dummies = guards = 0
    for i in range(1, d + 1):
        ri = r[i - 1]
        if ri == 0:
            continue
        a = base // i
        rp = ceil(ri / a)
        s = rp * a
        pool = list(cls[i])
        for _ in range(s - ri):
            m = 0
            for _ in range(i):
                m |= 1 << nxt
                nxt += 1
            pool.append(m)
            dummies += i
        E = []
        for _ in range(rp):
            E.append(1 << nxt)
            nxt += 1
        guards += rp
        alpha += rp
        for X in _disjoint_unions(pool, a, cap):
            for e in E:
                out.add(X | e)
    return JoinInstance(nxt, tuple(sorted(out)), alpha, h, dummies, guards)


def reduce_partition_sets_to_partition(inst: SetSystem, c: int) -> Iterator[SetSystem]:
    assert inst.variant == "partition-le-sets"
    for r in iter_signatures(inst.family, inst.d, inst.n, max_w=inst.t):
        J = build_join_instance(inst.n, inst.family, inst.d, c, r)
        yield SetSystem(J.n, J.family, "partition-le", J.h)


def reduce_partition_to_eq_partition(inst: SetSystem, c: int) -> Iterator[SetSystem]:
    assert inst.variant == "partition-le"
    for r in iter_signatures(inst.family, inst.d, inst.n):
        J = build_join_instance(inst.n, inst.family, inst.d, c, r)
        yield SetSystem(J.n, J.family, "partition-eq", J.h)


def reduce_packing_sets_to_eq_packing(inst: SetSystem, c: int) -> Iterator[SetSystem]:
    assert inst.variant == "packing-le-sets"
    for r in iter_signatures(inst.family, inst.d, inst.n, min_w=inst.t):
        J = build_join_instance(inst.n, inst.family, inst.d, c, r)
        yield SetSystem(J.n, J.family, "packing-eq-sets", J.h, J.alpha)


# ---------------------------------------------------------------- mod-3 padding

def pad_partition_mod3(inst: SetSystem) -> SetSystem:
    """Pad with 3-s dummy d-sets, then take unions of 3 disjoint members."""
    assert inst.variant == "partition-eq"
    d, n = inst.d, inst.n
    s = (n // d) % 3
    fam = list(inst.family)
    nxt = n
    for _ in range(3 - s):
        m = 0
        for _ in range(d):
            m |= 1 << nxt
            nxt += 1
        fam.append(m)
    new = _disjoint_unions(fam, 3, G_CAP)
    return SetSystem(nxt, tuple(new), "partition-eq", 3 * d)


# ---------------------------------------------------------------- trivial injections

def eq_cover_to_le_cover(inst: SetSystem) -> SetSystem:
    assert inst.variant == "cover-eq"
    return inst.with_(variant="cover-le")


def eq_packing_to_le_packing(inst: SetSystem) -> SetSystem:
    assert inst.variant == "packing-eq-sets"
    return inst.with_(variant="packing-le-sets")


def eq_packing_to_le_union(inst: SetSystem) -> SetSystem:
    assert inst.variant == "packing-eq-sets"
    return inst.with_(variant="packing-le-union", t=inst.t * inst.d)


def partition_to_packing(inst: SetSystem) -> SetSystem:
    assert inst.variant == "partition-eq"
    return inst.with_(variant="packing-eq-sets", t=-(-inst.n // inst.d))


def partition_to_cover(inst: SetSystem) -> SetSystem:
    assert inst.variant == "partition-eq"
    return inst.with_(variant="cover-eq", t=inst.n // inst.d)


def trivial_injections(inst: SetSystem) -> list:
    """All identity-shaped wrappers applicable to the instance's variant."""
    return [fn(inst) for src, fn in TRIVIAL.items() if src[0] == inst.variant]


TRIVIAL = {
    ("cover-eq", "cover-le"): eq_cover_to_le_cover,
    ("packing-eq-sets", "packing-le-sets"): eq_packing_to_le_packing,
    ("packing-eq-sets", "packing-le-union"): eq_packing_to_le_union,
    ("partition-eq", "packing-eq-sets"): partition_to_packing,
    ("partition-eq", "cover-eq"): partition_to_cover,
}


def _single(fn):
    def wrapped(inst, **_):
        yield fn(inst)
    wrapped.__doc__ = fn.__doc__
    return wrapped


# name -> (source variant, callable(inst, **params) -> iterator of instances)
REDUCTIONS = {
    "cover-to-partition-sets": ("cover-le", _single(reduce_cover_to_partition_sets)),
    "packing-union-to-partition-sets": (
        "packing-le-union", lambda inst, b=2, **_: reduce_packing_union_to_partition_sets(inst, b)),
    "partition-sets-to-partition": (
        "partition-le-sets", lambda inst, c=1, **_: reduce_partition_sets_to_partition(inst, c)),
    "partition-to-eq-partition": (
        "partition-le", lambda inst, c=1, **_: reduce_partition_to_eq_partition(inst, c)),
    "packing-sets-to-eq-packing": (
        "packing-le-sets", lambda inst, c=1, **_: reduce_packing_sets_to_eq_packing(inst, c)),
    "pad-partition-mod3": ("partition-eq", _single(pad_partition_mod3)),
}
for (_src, _dst), _fn in TRIVIAL.items():
    REDUCTIONS[f"{_src}-to-{_dst}"] = (_src, _single(_fn))


def any_yes(instances: Iterable[SetSystem], cap: Optional[int] = None) -> bool:
    return any(oracle_set(i, cap=cap).verdict for i in instances)


# ---------------------------------------------------------------- text format

def parse_setsys(text: str) -> SetSystem:
    n = None
    fam, t, variant, d = [], None, None, None
    for no, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        try:
            if tok[0] == "u":
                n = int(tok[1])
            elif tok[0] == "s":
                if n is None:
                    raise ParseError(no, "set before 'u' line")
                es = [int(x) for x in tok[1:]]
                if any(not 1 <= e <= n for e in es):
                    raise ParseError(no, "element out of range")
                fam.append(mask_of(es))
            elif tok[0] == "t":
                t = int(tok[1])
            elif tok[0] == "d":
                d = int(tok[1])
            elif tok[0] == "variant":
                variant = tok[1]
                if variant not in VARIANTS:
                    raise ParseError(no, f"unknown variant {variant!r}")
            else:
                raise ParseError(no, f"unknown line kind {tok[0]!r}")
        except (ValueError, IndexError):
            raise ParseError(no, "malformed line") from None
    if n is None or variant is None:
        raise ParseError(0, "missing 'u' or 'variant' line")
    if d is None:
        d = max((popcount(s) for s in fam), default=1)
    try:
        return SetSystem(n, tuple(fam), variant, d, t).require_cover()
    except ValueError as e:
        raise ParseError(0, str(e)) from None


def serialize_setsys(inst: SetSystem) -> str:
    lines = [f"u {inst.n}", f"variant {inst.variant}", f"d {inst.d}"]
    if inst.t is not None:
        lines.append(f"t {inst.t}")
    lines += ["s " + " ".join(map(str, elems_of(s))) for s in inst.family]
    return "\n".join(lines) + "\n"
