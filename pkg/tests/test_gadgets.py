import random
from itertools import permutations, product

import pytest

from hubsolve.gadgets import (Gadget, Relation, all_relations, brute_max_cut, build_maxcut_instance,
                              build_neq, build_one_realizer, build_or, build_or2, build_relation,
                              cost_ed, cost_ed_brute, max_cut_hub, neq_relation, or_relation,
                              parse_gadget, serialize_gadget, verify_extension_gadget,
                              verify_realization)
from hubsolve.maxcsp import MaxCsp, oracle_maxcsp


def test_or2_costs_match_claim():
    g = build_or2()
    assert cost_ed(g, (1, 2)) == 1 and cost_ed(g, (2, 2)) == 3
    assert all(cost_ed(g, d) == cost_ed_brute(g, d) for d in product((1, 2), repeat=2))
    assert g.n == 5 and len(g.edges) == 5 and g.portals == (0, 3)


def test_single_edge():
    e = build_neq()
    assert cost_ed(e, (1, 1)) == 1
    rz = verify_realization(e, neq_relation())
    assert rz.realizes and rz.k == 0 and rz.omega_realizes(1)
    assert verify_extension_gadget(e, neq_relation())


def test_or2_two_realizes():
    rz = verify_realization(build_or2(), or_relation(2))
    assert rz.k == 1 and rz.omega_realizes(2)
    assert not verify_extension_gadget(build_or2(), or_relation(2))


def test_or3_structure():
    g = build_or(3, omega=1)
    copies = 2 * 3 + 3
    assert g.n == 9 + 1 + copies * 3
    assert verify_realization(build_or(3), or_relation(3)).realizes


@pytest.mark.parametrize("r", [1, 2])
def test_every_small_relation(r):
    for R in all_relations(r):
        J = build_relation(R)
        assert J.portals_independent()
        assert verify_realization(J, R).realizes
        for omega in (1, 2):
            assert verify_realization(build_one_realizer(R, omega), R).omega_realizes(omega)


def test_full_relation_vacuous():
    R = Relation.of(2, 2, product((1, 2), repeat=2))
    rz = verify_realization(build_one_realizer(R), R)
    assert rz.realizes and rz.omega is None


def test_sampled_arity_three():
    rng = random.Random(15)
    pool = all_relations(3)
    for R in rng.sample(pool, 6):
        assert verify_realization(build_relation(R), R).realizes
        assert verify_realization(build_one_realizer(R), R).omega_realizes(1)


def test_alldiff_extension_gadget():
    lists = tuple(frozenset({1, 2, 3}) for _ in range(3))
    k3 = Gadget(3, ((0, 1), (0, 2), (1, 2)), lists, (0, 1, 2), q=3)
    R = Relation.of(3, 3, permutations((1, 2, 3)))
    assert verify_extension_gadget(k3, R)


def test_maxcut_empty_and_neq():
    syn = build_maxcut_instance(MaxCsp(2, 2, ()), 0)
    assert syn.graph.m == 0 and syn.threshold == 0
    inst = MaxCsp(2, 2, (((0, 1), frozenset({(1, 2), (2, 1)})),))
    syn = build_maxcut_instance(inst, 0)
    assert max_cut_hub(syn.graph, syn.hub.hub) >= syn.threshold


def test_maxcut_random_equivalence():
    rng = random.Random(16)
    for _ in range(12):
        n = rng.randint(1, 3)
        cons = []
        for _ in range(rng.randint(1, 3)):
            k = rng.randint(1, min(2, n))
            scope = tuple(rng.sample(range(n), k))
            rel = frozenset(t for t in product((1, 2), repeat=k) if rng.random() < 0.6)
            cons.append((scope, rel))
        inst = MaxCsp(n, 2, tuple(cons))
        opt = oracle_maxcsp(inst)[1]
        syn = build_maxcut_instance(inst, 0)
        mc = max_cut_hub(syn.graph, syn.hub.hub)
        if syn.graph.n <= 18:
            assert mc == brute_max_cut(syn.graph)
        for z in range(len(cons) + 1):
            assert (mc >= syn.threshold_for(z)) == (opt <= z)


def test_gadget_roundtrip():
    g = build_relation(or_relation(2))
    assert parse_gadget(serialize_gadget(g)) == g
