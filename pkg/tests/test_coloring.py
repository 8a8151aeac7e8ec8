import random

import pytest

from hubsolve.coloring import (check_solution, list_coloring_search, oracle_coloring,
                               oracle_ed, oracle_list_coloring, oracle_vd, solve_coloring,
                               solve_coloring_ed, solve_coloring_vd, solve_list_coloring)
from hubsolve.generators import random_graph, random_hub, random_lists
from hubsolve.graph import Graph, ListAssignment, tight_hub, validate_hub
from hubsolve.wildcard import solve_coloring_vd_fast

from conftest import clique, cycle, path


def full(g, q):
    return ListAssignment.full(g.n, q)


def test_k3_coloring():
    g = clique(3)
    h = validate_hub(g, {0, 1}, 1, 2)
    sol = solve_coloring(g, h, 3)
    assert sol is not None and check_solution(g, sol, q=3)
    assert solve_coloring(g, h, 2) is None


def test_empty_list_rejects():
    g = path(3)
    L = ListAssignment(2, (frozenset({1}), frozenset(), frozenset({1, 2})))
    assert solve_list_coloring(g, L, validate_hub(g, {1}, 1, 1)) is None


def test_c5_two_lists():
    g = cycle(5)
    h = validate_hub(g, {0, 2}, 2, 2)
    assert solve_list_coloring(g, full(g, 2), h) is None


@pytest.mark.parametrize("g,q,hub,cost", [
    (clique(3), 2, {0}, 1),
    (clique(4), 3, {0, 1}, 1),
    (Graph(4, frozenset()), 2, set(), 0),
])
def test_vd_examples(g, q, hub, cost):
    h = tight_hub(g, hub)
    L = full(g, q)
    assert solve_coloring_vd(g, L, h).cost == cost
    assert solve_coloring_vd_fast(g, L, h).cost == cost
    assert oracle_vd(g, L).cost == cost


def test_vd_fast_examples():
    g = path(3)
    assert solve_coloring_vd_fast(g, full(g, 1), tight_hub(g, {1})).cost == 1
    c5 = cycle(5)
    for hub in ({0, 1}, {0, 2}, {1, 3}):
        assert solve_coloring_vd_fast(c5, full(c5, 2), tight_hub(c5, hub)).cost == 1


@pytest.mark.parametrize("g,q,cost", [(clique(3), 2, 1), (cycle(5), 2, 1), (clique(4), 3, 1)])
def test_ed_examples(g, q, cost):
    assert solve_coloring_ed(g, tight_hub(g, {0, 1}), q).cost == cost
    assert oracle_ed(g, q).cost == cost


def test_oracle_examples():
    assert oracle_coloring(clique(3), 3) is not None
    assert oracle_vd(clique(3), full(clique(3), 2)).cost == 1


def test_random_cross_check_with_leaf_bound():
    rng = random.Random(7)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 9), 0.4)
        h = random_hub(rng, g, 3, 2)
        q = rng.choice((2, 3))
        L = random_lists(rng, g.n, q)
        sol, leaves = list_coloring_search(g, L, h)
        assert (sol is None) == (oracle_list_coloring(g, L) is None)
        d = max(h.delta, 1)
        assert leaves <= (q ** d - 1) ** -(-h.p // d)
        a, b = solve_coloring_vd(g, L, h), solve_coloring_vd_fast(g, L, h)
        assert a.cost == b.cost == oracle_vd(g, L).cost
        assert check_solution(g, a, L) and check_solution(g, b, L)


def test_monotonicity():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng, rng.randint(3, 8), 0.35)
        q = rng.choice((1, 2, 3))
        missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
        if not missing:
            continue
        g2 = g.add_edge(*rng.choice(missing))
        assert oracle_vd(g2, full(g2, q)).cost >= oracle_vd(g, full(g, q)).cost
        if q > 1:
            assert oracle_ed(g2, q).cost >= oracle_ed(g, q).cost
        v = rng.randrange(g.n)
        keep = [u for u in range(g.n) if u != v]
        sub, _ = g.induced(keep)
        assert oracle_vd(sub, full(sub, q)).cost <= oracle_vd(g, full(g, q)).cost
