"""The ten property suites behind `hubsolve selfcheck` and tests/test_acceptance.py.

Each suite returns a CriterionResult; `quick` shrinks the corpora, `full`
uses the sizes from the acceptance list.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import ceil, factorial
from typing import Callable

from .coloring import (check_solution, list_coloring_search, oracle_coloring,
                       oracle_ed, oracle_list_coloring, oracle_vd, solve_coloring,
                       solve_coloring_ed, solve_coloring_vd)
from .graph import ListAssignment
from .domset import (all_families, min_hitting_set, min_set_cover, oracle_domset,
                     reduce_hittingset_to_domset, reduce_setcover_to_domset, solve_domset_hub)
from .gadgets import (Relation, all_relations, build_one_realizer, build_or2,
                      build_maxcut_instance, build_relation, cost_ed, cost_ed_brute,
                      max_cut_hub, or_relation, verify_realization)
from .generators import (families_up_to_relabelling, random_graph, random_hub,
                         random_hubbed_graph, random_lists, random_wildcard_csp)
from .maxcsp import MaxCsp, covering_family, oracle_maxcsp, restrict_domains
from .setsys import (REDUCTIONS, VARIANTS, SetSystem, build_join_instance, iter_signatures,
                     mask_of, naive_oracle, oracle_set, popcount, size_classes)
from .triangles import (build_trieq, covering_packings, has_triangle_partition,
                        oracle_triangle_packing, reduce_partition_to_triangle,
                        solve_triangle_packing)
from .wildcard import (oracle_wildcard, reduce_wildcard, solve_coloring_vd_fast,
                       solve_wildcard, vd_to_wildcard_csp)

LEVELS = ("quick", "full")


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    detail: str = ""
    seconds: float = 0.0

    def line(self, timing: bool = False) -> str:
        verdict = "pass" if self.passed else "fail"
        out = f"criterion={self.number} name={self.name} result={verdict} checked={self.checked}"
        if timing:
            out += f" seconds={self.seconds:.1f}"
        return out + (f" detail={self.detail}" if self.detail else "")


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failures: list = []

    def check(self, ok: bool, what: str):
        self.checked += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(what)
        elif not ok:
            self.failures.append(None)

    @property
    def ok(self) -> bool:
        return not self.failures

    def detail(self) -> str:
        shown = [f for f in self.failures if f]
        return ";".join(shown).replace(" ", "") + (f";+{len(self.failures) - len(shown)}more"
                                                   if len(self.failures) > len(shown) else "")


# ---------------------------------------------------------------- criteria 1 and 2

COLORING_VARIANTS = (("coloring", 2), ("coloring", 3), ("list", 3),
                     ("vd", 1), ("vd", 2), ("vd", 3), ("ed", 2), ("ed", 3))


@lru_cache(maxsize=4)
def coloring_corpus(seed: int, per_variant: int) -> tuple:
    """(variant, q, graph, hub, lists) tuples; hubs use delta in {2, 3}."""
    out = []
    for k, (kind, q) in enumerate(COLORING_VARIANTS):
        rng = random.Random(seed * 1000 + k)
        for _ in range(per_variant):
            n = rng.randint(1, 9)
            g = random_graph(rng, n, rng.choice([0.2, 0.35, 0.5]))
            h = random_hub(rng, g, 3, rng.choice([2, 3]))
            L = random_lists(rng, n, q) if kind in ("list", "vd") else ListAssignment.full(n, q)
            out.append((kind, q, g, h, L))
    return tuple(out)


def _sizes(level: str, quick: int, full: int) -> int:
    return full if level == "full" else quick


def criterion_1(seed: int, level: str) -> _Tally:
    tal = _Tally()
    for kind, q, g, h, L in coloring_corpus(seed, _sizes(level, 120, 500)):
        tag = f"{kind}q{q}n{g.n}"
        if kind == "coloring":
            sol, o = solve_coloring(g, h, q), oracle_coloring(g, q)
            tal.check((sol is None) == (o is None) and (sol is None or check_solution(g, sol, q=q)), tag)
        elif kind == "list":
            sol, o = list_coloring_search(g, L, h)[0], oracle_list_coloring(g, L)
            tal.check((sol is None) == (o is None) and (sol is None or check_solution(g, sol, L)), tag)
        elif kind == "vd":
            a, b, o = solve_coloring_vd(g, L, h), solve_coloring_vd_fast(g, L, h), oracle_vd(g, L)
            tal.check(a.cost == b.cost == o.cost and check_solution(g, a, L)
                      and check_solution(g, b, L), tag)
        else:
            sol, o = solve_coloring_ed(g, h, q), oracle_ed(g, q)
            tal.check(sol.cost == o.cost and check_solution(g, sol, q=q), tag)
    return tal


def criterion_2(seed: int, level: str) -> _Tally:
    tal = _Tally()
    for kind, q, g, h, L in coloring_corpus(seed, _sizes(level, 120, 500)):
        d = max(h.delta, 1)
        if kind in ("coloring", "list"):
            _, leaves = list_coloring_search(g, L, h)
            bound = (q ** d - 1) ** ceil(h.p / d)
            tal.check(leaves <= bound, f"lc:{leaves}>{bound}")
        elif kind == "vd":
            nvars = sum(1 for x in h.hub if L[x])
            leaves = solve_coloring_vd_fast(g, L, h).leaves
            bound = ((q + 1) ** d - 1) ** ceil(nvars / d)
            tal.check(leaves <= bound, f"wc:{leaves}>{bound}")
    return tal


# ---------------------------------------------------------------- criterion 3

def criterion_3(seed: int, level: str) -> _Tally:
    tal = _Tally()
    rng = random.Random(seed + 3)
    for _ in range(_sizes(level, 100, 300)):
        n, q, r = rng.randint(1, 8), rng.randint(1, 3), rng.randint(1, 3)
        csp = random_wildcard_csp(rng, n, q, r, rng.randint(0, 6))
        opt = oracle_wildcard(csp)[1]
        res = solve_wildcard(csp)
        tal.check(res.cost == opt == res.assignment.total_cost, f"solve:{res.cost}!={opt}")
        rr = max(csp.arity, 1)
        bound = ((q + 1) ** rr - 1) ** ceil(n / rr)
        tal.check(res.leaves <= bound, f"leaves:{res.leaves}>{bound}")
        offset, red = reduce_wildcard(csp)
        tal.check(offset + oracle_wildcard(red)[1] == opt, "reduce")
    return tal


# ---------------------------------------------------------------- criterion 4

def criterion_4(seed: int, level: str) -> _Tally:
    tal = _Tally()
    or2 = build_or2()
    costs = {d: cost_ed(or2, d) for d in product((1, 2), repeat=2)}
    tal.check(all(costs[d] == (1 if d != (2, 2) else 3) for d in costs), f"or2:{costs}")
    tal.check(all(cost_ed_brute(or2, d) == costs[d] for d in costs), "or2-brute")
    rels = [R for r in (1, 2) for R in all_relations(r)]
    rng = random.Random(seed + 4)
    pool = all_relations(3)
    rels += [rng.choice(pool) for _ in range(_sizes(level, 8, 50))]
    for R in rels:
        tag = f"r{R.r}:{sorted(R.tuples)}"
        tal.check(verify_realization(build_relation(R), R).realizes, "relation" + tag)
        tal.check(verify_realization(build_one_realizer(R), R).omega_realizes(1), "one" + tag)
    return tal


# ---------------------------------------------------------------- criterion 5

def maxcut_pool() -> list:
    """Relations whose auxiliary relation has arity at most 4."""
    return [R for r in (1, 2, 3) for R in all_relations(r) if r + len(R.excluded()) <= 4]


def criterion_5(seed: int, level: str) -> _Tally:
    tal = _Tally()
    rng = random.Random(seed + 5)
    pool = maxcut_pool()
    for _ in range(_sizes(level, 25, 200)):
        n = rng.randint(1, 6)
        cons = []
        for _ in range(rng.randint(1, 3)):
            R = rng.choice([R for R in pool if R.r <= n])
            cons.append((tuple(rng.sample(range(n), R.r)), R.tuples))
        inst = MaxCsp(n, 2, tuple(cons))
        opt = oracle_maxcsp(inst)[1]
        z = rng.randint(0, len(cons))
        syn = build_maxcut_instance(inst, z)
        cut = max_cut_hub(syn.graph, syn.hub.hub)
        tal.check((opt <= z) == (cut >= syn.threshold), f"z{z}opt{opt}")
        for zz in range(len(cons) + 1):
            tal.check((opt <= zz) == (cut >= syn.threshold_for(zz)), f"z{zz}opt{opt}")
    return tal


# ---------------------------------------------------------------- criterion 6

def _variant_instances(n: int, fam: tuple) -> list:
    """Every (variant, d, t) reading of a family that the reductions accept."""
    if not fam:
        return []
    sizes = {popcount(s) for s in fam}
    d = max(sizes)
    cover = 0
    for s in fam:
        cover |= s
    covers = cover == (1 << n) - 1
    out = []
    for variant, (rule, kind) in VARIANTS.items():
        if rule == "eq" and len(sizes) > 1:
            continue
        if kind in ("cover", "partition", "partition-sets") and not covers:
            continue
        if kind == "partition":
            out.append(SetSystem(n, fam, variant, d))
            continue
        for t in range(0, n + 2):
            out.append(SetSystem(n, fam, variant, d, t))
    return out


_JOIN_BASED = {"partition-sets-to-partition", "partition-to-eq-partition",
               "packing-sets-to-eq-packing"}


def _check_system(tal: _Tally, inst: SetSystem, naive: bool):
    v = oracle_set(inst, cap=None).verdict
    if naive:
        tal.check(v == naive_oracle(inst), f"oracle:{inst.variant}")
    for name, (src, fn) in REDUCTIONS.items():
        if src != inst.variant:
            continue
        if name in _JOIN_BASED and inst.d > 3:
            continue  # c*d! grows too fast beyond d = 3
        got = any(oracle_set(j, cap=None).verdict for j in fn(inst))
        tal.check(got == v, f"{name}:n{inst.n}:{sorted(inst.family)}:t{inst.t}")


def _check_join(tal: _Tally, inst: SetSystem, c: int):
    d = inst.d
    for r in iter_signatures(inst.family, d, inst.n):
        J = build_join_instance(inst.n, inst.family, d, c, r)
        h = c * factorial(d) + 1
        alpha = sum(ceil(r[i - 1] / (c * factorial(d) // i)) for i in range(1, d + 1))
        dummies = sum((ceil(r[i - 1] / (c * factorial(d) // i)) * (c * factorial(d) // i)
                       - r[i - 1]) * i for i in range(1, d + 1))
        tal.check(J.h == h and all(popcount(s) == h for s in J.family)
                  and J.alpha == alpha == J.guard_elems and J.dummy_elems == dummies
                  and J.n == inst.n + J.dummy_elems + J.guard_elems, f"join:{r}")


def criterion_6(seed: int, level: str) -> _Tally:
    tal = _Tally()
    max_n = _sizes(level, 4, 5)
    # one family per relabelling class; verdicts are invariant under relabelling
    for n in range(1, max_n + 1):
        for fam in families_up_to_relabelling(n, 6):
            for inst in _variant_instances(n, fam):
                _check_system(tal, inst, naive=False)
    rng = random.Random(seed + 6)
    for _ in range(_sizes(level, 100, 500)):
        n = rng.randint(1, 8)
        d = rng.randint(1, 3)
        fam = tuple({mask_of(rng.sample(range(1, n + 1), min(n, rng.randint(1, d))))
                     for _ in range(rng.randint(1, 6))})
        for inst in _variant_instances(n, fam):
            _check_system(tal, inst, naive=True)
        inst = SetSystem(n, fam, "packing-le-sets", max(popcount(s) for s in fam), 0)
        if inst.d <= 3:
            _check_join(tal, inst, rng.choice([1, 2]) if inst.d <= 2 else 1)
    return tal


# ---------------------------------------------------------------- criterion 7

def criterion_7(seed: int, level: str) -> _Tally:
    tal = _Tally()
    for dp in range(2, 5):
        for d in range(1, dp):
            for n in range(0, 7):
                for m in (1, 2):
                    if m > max(n, 1):
                        continue
                    fam = list(covering_family(dp, d, n, m))
                    tal.check(len(fam) <= (dp / d + 1) ** n, f"size:{dp},{d},{n},{m}")
                    ok = all(any(all(x in D for x, D in zip(t, M)) for M in fam)
                             for t in product(range(1, dp + 1), repeat=n))
                    tal.check(ok, f"cover:{dp},{d},{n},{m}")
    rng = random.Random(seed + 7)
    for _ in range(_sizes(level, 20, 80)):
        n = rng.randint(1, 5)
        cons = []
        for _ in range(rng.randint(0, 6)):
            k = rng.randint(1, min(3, n))
            sc = tuple(rng.sample(range(n), k))
            rel = frozenset(t for t in product(range(1, 4), repeat=k) if rng.random() < 0.4)
            cons.append((sc, rel))
        inst = MaxCsp(n, 3, tuple(cons))
        best = min(oracle_maxcsp(restrict_domains(inst, M))[1] for M in covering_family(3, 2, n))
        tal.check(best == oracle_maxcsp(inst)[1], f"restrict:n{n}")
    return tal


# ---------------------------------------------------------------- criterion 8

def criterion_8(seed: int, level: str) -> _Tally:
    tal = _Tally()
    for r in (3, 6):
        gad = build_trieq(r)
        p1, p2, p3 = gad.families
        found = covering_packings(gad.graph, range(r, 4 * r))
        sizes = sorted(len(x) for x in found)
        covered = [set(v for t in x for v in t) & set(gad.portals) for x in found]
        tal.check(len(found) == 2 and sizes == [r, r + r // 3], f"r{r}:{sizes}")
        tal.check({frozenset(x) for x in found} == {frozenset(p1 + p3), frozenset(p2)}, f"r{r}:fam")
        tal.check(sorted(len(c) for c in covered) == [0, r], f"r{r}:portals")
    return tal


# ---------------------------------------------------------------- criterion 9

def _partition_families(n: int, max_sets: int):
    triples = [mask_of(c) for c in combinations(range(1, n + 1), 3)]
    full = (1 << n) - 1
    for k in range(1, max_sets + 1):
        for fam in combinations(triples, k):
            u = 0
            for s in fam:
                u |= s
            if u == full:
                yield fam


def criterion_9(seed: int, level: str) -> _Tally:
    tal = _Tally()
    rng = random.Random(seed + 9)
    # (n, max |F|): every covering triple family within these bounds
    plans = [(3, 1), (6, 6), (9, 4)] if level == "full" else [(3, 1), (6, 4)]
    for n, k in plans:
        for fam in _partition_families(n, k):
            inst = SetSystem(n, fam, "partition-eq", 3)
            g, _ = reduce_partition_to_triangle(inst)
            tal.check(oracle_set(inst).verdict == has_triangle_partition(g), f"a:n{n}")
    if level != "full":
        triples = [mask_of(c) for c in combinations(range(1, 10), 3)]
        done = 0
        while done < 200:
            fam = rng.sample(triples, rng.randint(3, 6))
            if rng.random() < 0.5:
                perm = rng.sample(range(1, 10), 9)
                fam += [mask_of(perm[i:i + 3]) for i in (0, 3, 6)]
            inst = SetSystem(9, tuple(fam), "partition-eq", 3)
            if not inst.covers_universe():
                continue
            g, _ = reduce_partition_to_triangle(inst)
            tal.check(oracle_set(inst).verdict == has_triangle_partition(g), "a:n9")
            done += 1
    for it in range(_sizes(level, 100, 300)):
        n = rng.randint(4, 10)
        g, h = random_hubbed_graph(rng, n, rng.randint(1, min(5, n)), density=rng.uniform(0.4, 0.8))
        opt = oracle_triangle_packing(g)
        c = rng.choice([1, 2, 3])
        for t in (opt - 1, opt, opt + 1):
            res = solve_triangle_packing(g, h, t, c)
            tal.check(res.verdict == (opt >= t), f"b:n{n}t{t}opt{opt}")
            mc = solve_triangle_packing(g, h, t, c, splitter="mc", seed=seed * 1000 + it)
            tal.check(not mc.verdict or (opt >= t and len(mc.packing) >= t), f"c:n{n}t{t}")
    return tal


# ---------------------------------------------------------------- criterion 10

def criterion_10(seed: int, level: str) -> _Tally:
    tal = _Tally()
    top = _sizes(level, 4, 5)
    # all families up to 7 sets for n <= 3; larger n capped at 3 sets to bound the oracle
    for n in range(1, top + 1):
        for fam in all_families(n, 7 if n <= 3 else 3):
            if fam and set().union(*map(set, fam)) == set(range(1, n + 1)):
                g, _ = reduce_setcover_to_domset(n, fam)
                tal.check(oracle_domset(g, cap=32).size == min_set_cover(n, fam) + len(fam),
                          f"cover:n{n}")
            g, _ = reduce_hittingset_to_domset(n, fam)
            tal.check(oracle_domset(g, cap=32).size == n + min_hitting_set(n, fam), f"hit:n{n}")
    rng = random.Random(seed + 10)
    for _ in range(_sizes(level, 100, 300)):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.uniform(0.1, 0.5))
        h = random_hub(rng, g, 3, 3)
        tal.check(solve_domset_hub(g, h).size == oracle_domset(g).size, f"hub:n{n}")
    return tal


CRITERIA: dict[int, tuple[str, Callable]] = {
    1: ("oracle-equivalence-colorings", criterion_1),
    2: ("branching-budgets", criterion_2),
    3: ("csp-wildcard", criterion_3),
    4: ("gadget-calculus", criterion_4),
    5: ("maxcut-synthesis", criterion_5),
    6: ("set-system-reductions", criterion_6),
    7: ("covering-family", criterion_7),
    8: ("triangle-equality-gadget", criterion_8),
    9: ("triangle-pipeline", criterion_9),
    10: ("dominating-set", criterion_10),
}


def run_criterion(k: int, seed: int = 1, level: str = "full") -> CriterionResult:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    name, fn = CRITERIA[k]
    t0 = time.perf_counter()
    try:
        tal = fn(seed, level)
        passed, checked, detail = tal.ok and tal.checked > 0, tal.checked, tal.detail()
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        passed, checked, detail = False, 0, f"{type(exc).__name__}:{exc}".replace(" ", "_")[:200]
    return CriterionResult(k, name, passed, checked, detail, time.perf_counter() - t0)
