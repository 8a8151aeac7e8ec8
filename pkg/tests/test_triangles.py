import random
from itertools import combinations

import pytest

from hubsolve.errors import BadArity, ParamsTooLarge
from hubsolve.generators import random_hubbed_graph
from hubsolve.graph import Graph, tight_hub, validate_hub
from hubsolve.setsys import SetSystem, mask_of, oracle_set
from hubsolve.triangles import (PrecoloredInstance, balanced_probability, build_splitter,
                                build_trieq, check_precolored_witness, covering_packings,
                                has_triangle_partition, is_splitter, oracle_triangle_packing,
                                reduce_partition_to_triangle, solve_precolored,
                                solve_triangle_packing, triangles)

from conftest import clique


def test_oracle_examples():
    assert oracle_triangle_packing(clique(3)) == 1
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert oracle_triangle_packing(bowtie) == 1
    assert oracle_triangle_packing(clique(6)) == 2


@pytest.mark.parametrize("r", [3, 6])
def test_trieq_two_packings(r):
    gad = build_trieq(r)
    assert gad.graph.n == 4 * r
    inner = [v for v in range(4 * r) if v not in gad.portals]
    packs = covering_packings(gad.graph, inner)
    assert len(packs) == 2
    covered = sorted((len(p), all(any(v in t for t in p) for v in gad.portals)) for p in packs)
    assert covered == [(r, False), (r + r // 3, True)]
    p1, p2, p3 = gad.families
    assert {frozenset(p) for p in packs} == {frozenset(p1 + p3), frozenset(p2)}


def test_trieq_bad_arity():
    with pytest.raises(BadArity):
        build_trieq(4)


def test_partition_to_triangle_small():
    inst = SetSystem(3, (mask_of({1, 2, 3}),), "partition-eq", 3)
    g, h = reduce_partition_to_triangle(inst)
    assert g.n == 12 and h.hub == frozenset(range(3))
    assert has_triangle_partition(g)


def test_partition_to_triangle_random():
    rng = random.Random(13)
    triples = [mask_of(c) for c in combinations(range(1, 7), 3)]
    for _ in range(60):
        fam = rng.sample(triples, rng.randint(2, 5))
        inst = SetSystem(6, tuple(fam), "partition-eq", 3)
        if not inst.covers_universe():
            continue
        g, _ = reduce_partition_to_triangle(inst)
        assert has_triangle_partition(g) == oracle_set(inst).verdict


def test_splitter_examples():
    assert len(build_splitter(5, 3, 1)) == 1
    fam = build_splitter(4, 2, 2)
    assert is_splitter(fam.members, 4, 2, 2)
    fam = build_splitter(12, 4, 2)
    assert is_splitter(fam.members, 12, 4, 2)
    with pytest.raises(ParamsTooLarge):
        build_splitter(40, 6, 3)


def test_mc_reps_meet_failure_bound():
    for p, ell in [(4, 2), (5, 5), (6, 3)]:
        fam = build_splitter(10, p, ell, backend="mc", seed=1)
        assert (1 - balanced_probability(p, ell)) ** fam.reps <= 2 ** -20


def test_precolored_examples():
    g = clique(3)
    inst = PrecoloredInstance(g, 0, frozenset({0, 1, 2}), (1,), 1)
    assert solve_precolored(inst).verdict
    inst = PrecoloredInstance(g, 1, frozenset({0, 1, 2}), (1,), 1)
    res = solve_precolored(inst)
    assert res.verdict and check_precolored_witness(inst, res.packing)


def test_solve_examples():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert solve_triangle_packing(g, tight_hub(g, {0, 3}), 2, 1).verdict
    k4 = clique(4)
    for hub in ({0}, {0, 1}, {1, 2, 3}):
        assert not solve_triangle_packing(k4, tight_hub(k4, hub), 2, 1).verdict


def test_solve_random_vs_oracle():
    rng = random.Random(14)
    for it in range(40):
        n = rng.randint(4, 10)
        g, h = random_hubbed_graph(rng, n, rng.randint(1, min(4, n)))
        opt = oracle_triangle_packing(g)
        c = rng.choice([1, 2])
        for t in (opt, opt + 1):
            res = solve_triangle_packing(g, h, t, c)
            assert res.verdict == (opt >= t)
            if res.verdict and t > 0:
                assert len(res.packing) >= t
            mc = solve_triangle_packing(g, h, t, c, splitter="mc", seed=it)
            assert not mc.verdict or opt >= t
