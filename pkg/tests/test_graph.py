import pytest
from hypothesis import given, settings, strategies as st

from hubsolve.errors import ComponentTooLarge, NeighborhoodTooLarge, ParseError
from hubsolve.graph import (Graph, ListAssignment, greedy_hub, hub_to_tree_decomposition,
                            parse_graph, parse_hub, parse_lists, serialize_graph,
                            serialize_hub, serialize_lists, validate_hub)

from conftest import clique, path


def test_parse_path_and_triangle():
    assert parse_graph("p 3 2\ne 1 2\ne 2 3\n") == path(3)
    assert parse_graph("p 3 3\ne 1 2\ne 2 3\ne 1 3\n") == clique(3)


def test_parse_duplicate_edges_collapse():
    assert parse_graph("p 2 2\ne 1 2\ne 2 1\n").m == 1


@pytest.mark.parametrize("text,msg", [
    ("p 2 1\ne 1 3\n", "out of range"),
    ("p 2 1\ne 1 1\n", "self-loop"),
    ("e 1 2\n", "header"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_graph(text)


def test_validate_path():
    h = validate_hub(path(3), {1}, 1, 1)
    assert h.components == (frozenset({0}), frozenset({2}))


def test_validate_k3():
    g = clique(3)
    assert validate_hub(g, {0}, 2, 1).components == (frozenset({1, 2}),)
    with pytest.raises(NeighborhoodTooLarge):
        validate_hub(g, {0}, 2, 0)
    with pytest.raises(ComponentTooLarge):
        validate_hub(g, set(), 2, 0)


def test_tree_decomposition_examples():
    g = path(3)
    td = hub_to_tree_decomposition(validate_hub(g, {1}, 1, 1), g)
    assert set(td.bags) == {frozenset({1}), frozenset({0, 1}), frozenset({1, 2})}
    assert td.width == 1 and td.check(g)
    k3 = clique(3)
    assert hub_to_tree_decomposition(validate_hub(k3, {0, 1}, 1, 2), k3).width == 2
    empty = Graph(0, frozenset())
    td = hub_to_tree_decomposition(validate_hub(empty, set(), 0, 0), empty)
    assert td.bags == (frozenset(),) and td.width == 0


def test_greedy_hub_examples():
    assert greedy_hub(Graph(4, frozenset()), 1, 0) == frozenset()
    assert len(greedy_hub(clique(4), 1, 3)) == 3
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    assert greedy_hub(star, 1, 1) == {0}


graphs = st.integers(1, 9).flatmap(lambda n: st.builds(
    lambda es: Graph.from_edges(n, es),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
            .filter(lambda e: e[0] != e[1]), max_size=20)))


@settings(max_examples=80, deadline=None)
@given(graphs, st.integers(0, 4), st.integers(0, 4))
def test_greedy_hub_bags_satisfy_axioms(g, sigma, delta):
    q = greedy_hub(g, max(sigma, 1), delta)
    h = validate_hub(g, q, max(sigma, 1), delta)
    assert hub_to_tree_decomposition(h, g).check(g)


@settings(max_examples=50, deadline=None)
@given(graphs, st.integers(0, 3), st.integers(0, 3))
def test_whole_vertex_set_is_a_hub(g, sigma, delta):
    assert validate_hub(g, range(g.n), sigma, delta).components == ()


@settings(max_examples=80, deadline=None)
@given(graphs)
def test_graph_roundtrip(g):
    assert parse_graph(serialize_graph(g)) == g
    text = serialize_graph(g)
    assert serialize_graph(parse_graph(text)) == text


def test_hub_and_list_roundtrip():
    assert parse_hub(serialize_hub({0, 4}, 3, 2)) == (frozenset({0, 4}), 3, 2)
    L = ListAssignment(3, (frozenset({1}), frozenset({1, 2, 3}), frozenset()))
    assert parse_lists(serialize_lists(L), 3, 3) == L
