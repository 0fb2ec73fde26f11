import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from aesstab.cliques import (CliqueCensus, Embedding, clique_census, edges_in_many_cliques,
                             erdos_delta, find_blowup, find_kts, find_subgraph, kst_bound)
from aesstab.errors import CapacityError, InputError, SearchBudgetExceeded
from aesstab.extremal import aes_extremal, ktt_free_gadget, polarity_graph
from aesstab.graph import (build_graph, complete_graph, complete_multipartite, cycle_graph,
                           empty_graph, mask_of, random_graph)
from aesstab.oracle import naive_count_cliques, naive_find_subgraph

from conftest import add_edges, graphs


def check_handshakes(g, c: CliqueCensus):
    assert sum(c.per_vertex) == c.k * c.total
    assert sum(c.per_edge.values()) == comb(c.k, 2) * c.total
    for (u, v), x in c.per_edge.items():
        assert x <= min(c.per_vertex[u], c.per_vertex[v])


def test_census_examples():
    assert clique_census(complete_graph(5), 3).total == 10
    assert clique_census(cycle_graph(5), 3).total == 0
    c = clique_census(complete_multipartite([3, 3, 3]), 3)
    assert c.total == 27 and c.per_vertex == (9,) * 9


def test_census_small_k():
    g = cycle_graph(5)
    assert clique_census(g, 1).total == 5
    assert clique_census(g, 2).total == 5
    assert clique_census(g, 2).edge(1, 0) == 1
    with pytest.raises(InputError):
        clique_census(g, 0)
    with pytest.raises(CapacityError):
        clique_census(g, 9)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10), st.integers(1, 5))
def test_census_matches_naive(g, k):
    c = clique_census(g, k)
    assert c.total == naive_count_cliques(g, k)
    check_handshakes(g, c)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=10), st.integers(2, 4), st.data())
def test_census_merges_over_root_split(g, k, data):
    split = data.draw(st.sets(st.integers(0, g.n - 1)))
    a = clique_census(g, k, roots=mask_of(split))
    b = clique_census(g, k, roots=g.vertices & ~mask_of(split))
    assert a.merge(b) == clique_census(g, k)


def test_embedding_validate():
    tri = complete_graph(3)
    assert Embedding((0, 1, 2)).validate(tri, complete_graph(4))
    assert not Embedding((0, 0, 2)).validate(tri, complete_graph(4))
    assert not Embedding((0, 1, 2)).validate(tri, cycle_graph(5))


def test_find_blowup_examples():
    emb = find_blowup(complete_graph(6), 3, 2)
    assert emb is not None and emb.validate(complete_multipartite([2, 2, 2]), complete_graph(6))
    assert find_blowup(cycle_graph(5), 2, 2) is None
    assert find_blowup(aes_extremal(8, 3), 4, 1) is None


def test_find_blowup_budget_is_indeterminate():
    g = complete_multipartite([4, 4, 4, 4])
    with pytest.raises(SearchBudgetExceeded):
        find_blowup(g, 5, 1, budget=3)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9), st.integers(1, 3), st.integers(1, 2))
def test_find_blowup_agrees_with_subgraph(g, r, s):
    target = complete_multipartite([s] * r)
    got = find_blowup(g, r, s)
    ref = find_subgraph(g, target)
    assert (got is None) == (ref is None)
    if got is not None:
        assert got.validate(target, g)


def test_find_subgraph_examples(k55e):
    k55 = complete_multipartite([5, 5])
    assert find_subgraph(k55, complete_graph(3)) is None
    emb = find_subgraph(k55e, complete_graph(3))
    assert emb is not None and {0, 1} <= emb.image()
    assert find_subgraph(k55e, complete_multipartite([2, 2, 2])) is None
    with pytest.raises(CapacityError):
        find_subgraph(k55, empty_graph(17))


def test_find_subgraph_respects_fixed():
    emb = find_subgraph(complete_graph(5), complete_graph(3), fixed={0: 4})
    assert emb.assignment[0] == 4


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=5), graphs(max_n=9))
def test_find_subgraph_agrees_with_naive(h, g):
    got = find_subgraph(g, h)
    ref = naive_find_subgraph(g, h)
    assert (got is None) == (ref is None)
    if got is not None:
        assert got.validate(h, g)


def test_find_kts_examples():
    assert find_kts(complete_multipartite([3, 3]), 2, 2) is not None
    assert find_kts(cycle_graph(5), 2, 2) is None
    assert find_kts(ktt_free_gadget(7, 2, 2), 2, 2) is None
    assert find_kts(polarity_graph(5), 2, 2) is None


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9), st.integers(1, 2), st.integers(2, 3))
def test_find_kts_agrees_with_naive(g, t, s):
    kts = complete_multipartite([t, s])
    got = find_kts(g, t, s)
    assert (got is None) == (naive_find_subgraph(g, kts) is None)
    if got is not None:
        assert got.validate(kts, g)


def test_erdos_delta_values():
    assert erdos_delta(1, 1, 1) == Fraction(1, 2)
    # hand evaluation: delta_{1,2}(1/4) = 1/128, then 1/128 * (1/512)^2 / 16
    assert erdos_delta(2, 2, Fraction(1, 2)) == Fraction(1, 2 ** 29)
    assert erdos_delta(2, 2, Fraction(1, 2)) < erdos_delta(2, 2, 1)
    with pytest.raises(InputError):
        erdos_delta(2, 2, 0)
    with pytest.raises(InputError):
        erdos_delta(2, 2, Fraction(3, 2))


def test_erdos_delta_positive_and_increasing():
    grid = [Fraction(k, 10) for k in range(1, 11)]
    for r in range(1, 5):
        for s in range(1, 5):
            vals = [erdos_delta(r, s, e) for e in grid]
            assert all(v > 0 for v in vals)
            assert all(a < b for a, b in zip(vals, vals[1:]))


def test_edges_in_many_cliques_examples(k55e):
    assert edges_in_many_cliques(complete_graph(4), 3, 2) == set(complete_graph(4).edges())
    assert edges_in_many_cliques(cycle_graph(5), 3, 1) == set()
    assert edges_in_many_cliques(k55e, 3, 5) == {(0, 1)}


def test_kst_bound_c4():
    # t = s = 2: (n - 1) sqrt(n) / 2 + n / 2
    assert kst_bound(4, 2, 2) == pytest.approx(0.5 * (3 * 2 + 4))
    # K_{3,3} holds C4 but sits just below the bound at n = 6 (9 < 9.12)
    k33 = complete_multipartite([3, 3])
    assert find_kts(k33, 2, 2) is not None
    assert k33.num_edges < kst_bound(6, 2, 2) < 10
