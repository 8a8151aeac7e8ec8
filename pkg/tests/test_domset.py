import random

from hubsolve.domset import (all_families, is_dominating, min_hitting_set, min_set_cover,
                             oracle_domset, reduce_hittingset_to_domset,
                             reduce_setcover_to_domset, solve_domset_hub)
from hubsolve.generators import random_hubbed_graph
from hubsolve.graph import Graph, tight_hub

from conftest import clique, cycle, path


def test_oracle_examples():
    assert oracle_domset(clique(3)).size == 1
    assert oracle_domset(path(3)).size == 1
    res = oracle_domset(cycle(6))
    assert res.size == 2 and is_dominating(cycle(6), res.witness)


def test_hub_examples():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert solve_domset_hub(star, tight_hub(star, {0})).size == 1
    p5 = path(5)
    assert solve_domset_hub(p5, tight_hub(p5, {2})).size == 2


def test_setcover_examples():
    g, h = reduce_setcover_to_domset(1, [(1,)])
    assert oracle_domset(g).size == 2 and h.sigma == 3
    g, _ = reduce_setcover_to_domset(2, [(1,), (2,), (1, 2)])
    assert oracle_domset(g).size == 4


def test_hittingset_examples():
    g, _ = reduce_hittingset_to_domset(1, [(1,)])
    assert oracle_domset(g).size == 2
    g, _ = reduce_hittingset_to_domset(3, [])
    assert oracle_domset(g).size == 3


def test_identities_small_exhaustive():
    for n in (1, 2, 3):
        for fam in all_families(n, 3):
            if set().union(*map(set, fam)) == set(range(1, n + 1)):
                g, h = reduce_setcover_to_domset(n, fam)
                want = min_set_cover(n, fam) + len(fam)
                assert oracle_domset(g, cap=32).size == want
                assert solve_domset_hub(g, h).size == want
            g, h = reduce_hittingset_to_domset(n, fam)
            want = n + min_hitting_set(n, fam)
            assert oracle_domset(g, cap=32).size == want
            assert solve_domset_hub(g, h).size == want


def test_hub_vs_oracle_random():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(1, 12)
        g, h = random_hubbed_graph(rng, n, rng.randint(0, min(5, n)))
        res = solve_domset_hub(g, h)
        assert is_dominating(g, res.witness) and len(res.witness) == res.size
        assert res.size == oracle_domset(g).size
