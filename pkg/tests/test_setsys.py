import random
from itertools import combinations

import pytest

from hubsolve.setsys import (REDUCTIONS, SetSystem, build_join_instance, count_signatures,
                             disjointify, iter_signatures, mask_of, naive_oracle, oracle_set,
                             pad_partition_mod3, parse_setsys, popcount,
                             reduce_cover_to_partition_sets, reduce_packing_union_to_partition_sets,
                             reduce_partition_sets_to_partition, serialize_setsys,
                             trivial_injections, VARIANTS)


def fam(*sets):
    return tuple(mask_of(s) for s in sets)


def test_oracle_examples():
    inst = SetSystem(3, fam({1, 2}, {2, 3}), "cover-le", 2, 2)
    assert oracle_set(inst).verdict
    assert not oracle_set(inst.with_(t=1)).verdict
    part = SetSystem(4, fam({1, 2}, {3, 4}, {1, 3}), "partition-eq", 2)
    res = oracle_set(part)
    assert res.verdict and set(res.witness) == set(fam({1, 2}, {3, 4}))


def random_system(rng, n, variant, d=3):
    rule = VARIANTS[variant][0]
    sets = set()
    for _ in range(rng.randint(0, 6)):
        k = d if rule == "eq" else rng.randint(1, d)
        if k > n:
            continue
        sets.add(mask_of(rng.sample(range(1, n + 1), k)))
    return SetSystem(n, tuple(sets), variant, d, rng.randint(0, n))


def test_oracle_vs_naive():
    rng = random.Random(8)
    for _ in range(300):
        variant = rng.choice(sorted(VARIANTS))
        inst = random_system(rng, rng.randint(1, 8), variant)
        assert oracle_set(inst).verdict == naive_oracle(inst)


def test_cover_to_partition_sets():
    inst = SetSystem(2, fam({1, 2}), "cover-le", 2, 1)
    assert set(reduce_cover_to_partition_sets(inst).family) == set(fam({1}, {2}, {1, 2}))
    cover = fam({1, 2, 3}, {2, 3, 4}, {4, 5})
    parts = disjointify(cover)
    assert len(parts) == 3 and sum(map(popcount, parts)) == 5


def test_packing_union_examples():
    empty = SetSystem(4, (), "packing-le-union", 2, 0)
    yields = list(reduce_packing_union_to_partition_sets(empty, 2))
    assert any(oracle_set(y).verdict for y in yields)
    single = SetSystem(2, fam({1}), "packing-le-union", 1, 0)
    assert len(list(reduce_packing_union_to_partition_sets(single, 2))) == 3


def test_join_examples():
    J = build_join_instance(0, (), 3, 1, (0, 0, 0))
    assert J.family == () and J.alpha == 0
    J = build_join_instance(6, fam({1, 2, 3}, {4, 5, 6}), 3, 1, (0, 0, 2))
    assert J.alpha == 1 and len(J.family) == 1 and popcount(J.family[0]) == 7
    assert oracle_set(SetSystem(J.n, J.family, "packing-eq-sets", J.h, J.alpha)).verdict


def test_join_sizes_uniform():
    rng = random.Random(9)
    for _ in range(40):
        inst = random_system(rng, rng.randint(1, 6), "partition-le-sets", 3)
        for r in iter_signatures(inst.family, 3, inst.n):
            J = build_join_instance(inst.n, inst.family, 3, 1, r)
            assert all(popcount(s) == 7 for s in J.family)
            assert J.n == inst.n + J.dummy_elems + J.guard_elems
            assert J.dummy_elems <= 3 * 6


def test_signature_count_closed_form():
    rng = random.Random(10)
    for _ in range(40):
        inst = random_system(rng, rng.randint(1, 6), "packing-le-sets", 3)
        assert sum(1 for _ in iter_signatures(inst.family, 3, inst.n)) == \
            count_signatures(inst.family, 3, inst.n) <= (inst.n + 1) ** 3
        sigs = list(iter_signatures(inst.family, 3, inst.n, min_w=inst.t))
        assert len(sigs) == len(set(sigs))


def test_empty_partition_sets():
    inst = SetSystem(0, (), "partition-le-sets", 2, 0)
    assert any(oracle_set(y).verdict for y in reduce_partition_sets_to_partition(inst, 1))


def test_pad_mod3():
    inst = SetSystem(3, fam({1}, {2}, {3}), "partition-eq", 1)
    out = pad_partition_mod3(inst)
    assert out.n == 6 and out.d == 3 and oracle_set(out).verdict
    inst = SetSystem(2, fam({1}, {2}), "partition-eq", 1)
    assert pad_partition_mod3(inst).n == 3


@pytest.mark.parametrize("name", sorted(REDUCTIONS))
def test_reductions_preserve_verdict(name):
    src, fn = REDUCTIONS[name]
    rng = random.Random(name)
    d = 1 if name == "pad-partition-mod3" else 2
    for _ in range(25):
        n = rng.randint(1, 4)
        inst = random_system(rng, n, src, d)
        if VARIANTS[src][1] in ("cover", "partition", "partition-sets") and not inst.covers_universe():
            continue
        want = oracle_set(inst).verdict
        got = any(oracle_set(y, cap=None).verdict for y in fn(inst))
        assert got == want, (name, inst)


def test_trivial_injections_registered():
    inst = SetSystem(4, fam({1, 2}, {3, 4}), "partition-eq", 2)
    outs = trivial_injections(inst)
    assert outs and all(oracle_set(o).verdict for o in outs)


def test_text_roundtrip():
    rng = random.Random(11)
    for variant in sorted(VARIANTS):
        inst = random_system(rng, 5, variant)
        if VARIANTS[variant][1] in ("cover", "partition", "partition-sets") \
                and not inst.covers_universe():
            continue
        assert parse_setsys(serialize_setsys(inst)) == inst
