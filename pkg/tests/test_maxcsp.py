import random
from itertools import product

import pytest

from hubsolve.errors import BlockTooLarge
from hubsolve.maxcsp import (Cnf, MaxCsp, covering_family, group_sat, oracle_maxcsp,
                             oracle_maxsat, parse_cnf, parse_maxcsp, restrict_domains,
                             serialize_maxcsp, structured_split)


def random_cnf(rng, n):
    clauses = []
    for _ in range(rng.randint(0, 8)):
        k = rng.randint(1, min(3, n))
        vs = rng.sample(range(1, n + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Cnf(n, tuple(clauses))


def random_maxcsp(rng, n, d, r=2, m=5):
    cons = []
    for _ in range(rng.randint(0, m)):
        k = rng.randint(1, min(r, n))
        scope = tuple(rng.sample(range(n), k))
        rel = frozenset(t for t in product(range(1, d + 1), repeat=k) if rng.random() < 0.5)
        cons.append((scope, rel))
    return MaxCsp(n, d, tuple(cons))


def cnf_style_eval(inst):
    """Independent evaluator: each constraint as a CNF over indicator literals."""
    best = None
    for a in product(range(1, inst.d + 1), repeat=inst.n):
        bad = 0
        for scope, rel in inst.constraints:
            # a constraint is a conjunction of clauses, one per excluded tuple
            excluded = [t for t in product(range(1, inst.d + 1), repeat=len(scope)) if t not in rel]
            if any(all(a[v] == x for v, x in zip(scope, t)) for t in excluded):
                bad += 1
        best = bad if best is None else min(best, bad)
    return best


def test_oracle_trivial():
    assert oracle_maxcsp(MaxCsp(1, 2, (((0,), frozenset({(1,)})), ((0,), frozenset({(2,)})))))[1] == 1
    assert oracle_maxcsp(MaxCsp(2, 2, (((0, 1), frozenset({(1, 2)})),)))[1] == 0


def test_oracle_vs_cnf_evaluator():
    rng = random.Random(1)
    for _ in range(40):
        inst = random_maxcsp(rng, rng.randint(1, 8), 2, 3)
        assert oracle_maxcsp(inst)[1] == cnf_style_eval(inst)


def test_group_sat_single_clause():
    inst = group_sat(Cnf(2, ((1, -2),)), 2)
    assert inst.n == 1 and inst.d == 4
    assert len(inst.constraints) == 1 and len(inst.constraints[0][1]) == 3


def test_group_sat_empty():
    inst = group_sat(Cnf(0, ()), 2)
    assert inst.constraints == () and oracle_maxcsp(inst)[1] == 0


def test_group_sat_preserves_optimum():
    rng = random.Random(2)
    for _ in range(200):
        cnf = random_cnf(rng, rng.randint(1, 8))
        p = rng.randint(1, 3)
        inst = group_sat(cnf, p)
        assert inst.arity <= 3
        assert oracle_maxcsp(inst)[1] == oracle_maxsat(cnf)


def test_cover_examples():
    fam = covering_family(2, 1, 1, 1)
    assert sorted(fam) == [(frozenset({1}),), (frozenset({2}),)]
    assert len(covering_family(4, 3, 1, 1)) == 2
    fam = covering_family(3, 2, 4, 2)
    assert all(fam.covers(t) for t in product((1, 2, 3), repeat=4))
    assert len(fam) <= (3 / 2 + 1) ** 4


def test_block_too_large():
    with pytest.raises(BlockTooLarge):
        covering_family(6, 3, 6, 6, cap=1000)


def test_restrict_identity_and_empty():
    rng = random.Random(4)
    inst = random_maxcsp(rng, 3, 3)
    member = tuple(frozenset({1, 2, 3}) for _ in range(3))
    assert restrict_domains(inst, member) == inst
    inst = MaxCsp(1, 3, (((0,), frozenset({(3,)})),))
    red = restrict_domains(inst, (frozenset({1, 2}),))
    assert red.constraints[0][1] == frozenset() and oracle_maxcsp(red)[1] == 1


def test_restrict_min_over_members():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 4)
        inst = random_maxcsp(rng, n, 3)
        fam = covering_family(3, 2, n, 2)
        best = min(oracle_maxcsp(restrict_domains(inst, m))[1] for m in fam)
        assert best == oracle_maxcsp(inst)[1]


def satisfiable(inst):
    return oracle_maxcsp(inst)[1] == 0


def test_structured_split_counts_and_equivalence():
    rng = random.Random(6)
    inst = random_maxcsp(rng, 2, 2)
    assert len(list(structured_split(inst, 2))) == 3
    bad = MaxCsp(1, 2, (((0,), frozenset()),))
    assert not any(satisfiable(x) for _, x in structured_split(bad, 1))
    for _ in range(40):
        n = rng.randint(1, 6)
        inst = random_maxcsp(rng, n, 2, 2, 4)
        yields = list(structured_split(inst, 2))
        assert len(yields) == 3 ** -(-n // 2)
        assert any(satisfiable(x) for _, x in yields) == satisfiable(inst)


def test_text_roundtrip():
    rng = random.Random(7)
    for _ in range(10):
        inst = random_maxcsp(rng, 4, 3)
        assert parse_maxcsp(serialize_maxcsp(inst)) == inst
    assert parse_cnf("p cnf 2 1\n1 -2 0\n") == Cnf(2, ((1, -2),))
