import random

from hypothesis import given, settings, strategies as st

from hubsolve.generators import random_graph, random_hub, random_lists, random_wildcard_csp
from hubsolve.graph import Graph, ListAssignment, tight_hub
from hubsolve.coloring import oracle_vd
from hubsolve.wildcard import (Constraint, WildcardCsp, check_wildcard_property, decode,
                               encode, oracle_wildcard, parse_wcsp, reduce_wildcard,
                               serialize_wcsp, solve_wildcard, vd_to_wildcard_csp)

from conftest import path


def test_property_examples():
    assert check_wildcard_property(WildcardCsp(2, 2, (Constraint((0, 1), (0,) * 9),)))
    # value 1 costs 0 but the wildcard costs 1: replacing by x must not cost more
    assert not check_wildcard_property(WildcardCsp(1, 1, (Constraint((0,), (0, 1)),)))


def test_vd_reduction_on_p3():
    g = path(3)
    csp = vd_to_wildcard_csp(g, ListAssignment.full(3, 1), tight_hub(g, {1}))
    assert csp.n == 1 and len(csp.constraints) == 2
    assert all(len(c.scope) == 1 for c in csp.constraints)
    assert solve_wildcard(csp).cost == 1


def test_isolated_component_gives_constant():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    csp = vd_to_wildcard_csp(g, ListAssignment.full(4, 1), tight_hub(g, {0}))
    assert any(c.scope == () and c.table == (1,) for c in csp.constraints)


def test_wildcard_beats_cost_five():
    csp = WildcardCsp(1, 1, (Constraint((0,), (5, 0)),))
    res = solve_wildcard(csp)
    assert res.cost == 1 and res.assignment.values == (None,)


def test_empty_csp():
    res = solve_wildcard(WildcardCsp(4, 2, ()))
    assert res.cost == 0 and res.assignment.norm == 0


def test_random_vs_oracle_and_reduction():
    rng = random.Random(3)
    for _ in range(80):
        n, q, r = rng.randint(1, 7), rng.randint(1, 3), rng.randint(1, 3)
        csp = random_wildcard_csp(rng, n, q, r, rng.randint(0, 6))
        assert check_wildcard_property(csp)
        opt = oracle_wildcard(csp)[1]
        res = solve_wildcard(csp)
        assert res.cost == opt == res.assignment.total_cost
        rr = max(csp.arity, 1)
        assert res.leaves <= ((q + 1) ** rr - 1) ** -(-n // rr)
        off, red = reduce_wildcard(csp)
        assert off + oracle_wildcard(red)[1] == opt


def test_vd_csp_matches_oracle():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 8), 0.4)
        h = random_hub(rng, g, 3, 2)
        q = rng.randint(1, 3)
        L = ListAssignment.full(g.n, q)
        csp = vd_to_wildcard_csp(g, L, h)
        assert check_wildcard_property(csp)
        assert solve_wildcard(csp).cost == oracle_vd(g, L).cost


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda q: st.tuples(
    st.just(q), st.lists(st.integers(0, q), min_size=0, max_size=5))))
def test_encode_decode(args):
    q, digits = args
    assert decode(encode(digits, q), len(digits), q) == list(digits)


def test_wcsp_roundtrip():
    rng = random.Random(9)
    for _ in range(20):
        csp = random_wildcard_csp(rng, 4, 2, 2, 3)
        assert parse_wcsp(serialize_wcsp(csp)) == csp
