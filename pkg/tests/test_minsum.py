from itertools import product

from hypothesis import given, settings, strategies as st

from hubsolve.minsum import edge_cost_table, min_mono_edges

INF = float("inf")


def brute(n, q, edges, lists):
    best = INF
    for cols in product(range(1, q + 1), repeat=n):
        if any(c not in lists[v] for v, c in enumerate(cols)):
            continue
        best = min(best, sum(1 for u, v in edges if cols[u] == cols[v]))
    return best


instances = st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, 3),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
            .filter(lambda e: e[0] < e[1]), max_size=12),
    st.lists(st.sets(st.integers(1, 3), min_size=1), min_size=n, max_size=n)))


@settings(max_examples=120, deadline=None)
@given(instances)
def test_min_mono_matches_brute(inst):
    n, q, edges, raw = inst
    lists = [frozenset(c for c in L if c <= q) for L in raw]
    edges = sorted(edges)
    assert min_mono_edges(n, q, edges, lists) == brute(n, q, edges, lists)


@settings(max_examples=60, deadline=None)
@given(instances)
def test_table_entries_fix_kept_vertices(inst):
    n, q, edges, raw = inst
    lists = [frozenset(c for c in L if c <= q) for L in raw]
    edges = sorted(edges)
    keep = [0] if n == 1 else [0, n - 1]
    tab = edge_cost_table(n, q, edges, lists, keep)
    for cols in product(range(1, q + 1), repeat=len(keep)):
        fixed = list(lists)
        for v, c in zip(keep, cols):
            fixed[v] = fixed[v] & {c}
        assert tab[tuple(c - 1 for c in cols)] == brute(n, q, edges, fixed)
