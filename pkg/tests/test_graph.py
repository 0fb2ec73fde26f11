import itertools

import pytest
from hypothesis import given, settings, strategies as st

from aesstab.errors import CapacityError, InputError
from aesstab.extremal import aes_extremal
from aesstab.graph import (Graph, analyze_target, are_isomorphic, build_graph,
                           chromatic_number, codegree, complete_graph,
                           complete_multipartite, cycle_graph, empty_graph, induced,
                           is_proper_colouring, k_colouring, min_degree,
                           neighbourhood_graph, random_graph, twin_quotient)

from conftest import graphs


def test_build_graph_examples():
    tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert tri.num_edges == 3 and min_degree(tri) == 2
    assert build_graph(4, []).num_edges == 0
    c5 = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert c5.degrees() == [2] * 5


def test_build_graph_collapses_duplicates():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edges() == [(0, 1)]


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_build_graph_rejects(edges):
    with pytest.raises(InputError):
        build_graph(3, edges)


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(InputError):
        Graph(2, (0b10, 0))


def test_min_degree():
    assert min_degree(complete_graph(5)) == 4
    assert min_degree(cycle_graph(5)) == 2
    # E_2(5) is C_5, degree (1 - 3/5) * 5
    assert min_degree(aes_extremal(5, 2)) == 2
    with pytest.raises(InputError):
        min_degree(empty_graph(0))


def test_codegree_examples():
    assert codegree(complete_graph(4), 0, 3) == 2
    assert codegree(cycle_graph(5), 0, 1) == 0
    k55 = complete_multipartite([5, 5])
    assert codegree(k55, 0, 7) == 0
    assert codegree(k55, 0, 1) == 5
    with pytest.raises(InputError):
        codegree(k55, 2, 2)


def test_codegree_matches_naive_loop(rng):
    for _ in range(100):
        n = int(rng.integers(2, 13))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        for u, v in itertools.combinations(range(n), 2):
            naive = sum(1 for w in range(n) if g.has_edge(u, w) and g.has_edge(v, w))
            assert codegree(g, u, v) == naive


def test_neighbourhood_graph():
    g = neighbourhood_graph(complete_graph(4), 0)
    assert g.n == 4 and g.edges() == [(1, 2), (1, 3), (2, 3)]
    assert neighbourhood_graph(cycle_graph(5), 2).num_edges == 0
    k222 = complete_multipartite([2, 2, 2])
    gv = neighbourhood_graph(k222, 0)
    nb = set(k222.neighbours(0))
    expected = [(a, b) for a, b in k222.edges() if a in nb and b in nb]
    assert gv.edges() == expected
    sub, _ = induced(gv, nb)
    assert are_isomorphic(sub, complete_multipartite([2, 2]))


def test_induced_examples():
    sub, relabel = induced(complete_graph(5), [1, 3, 4])
    assert are_isomorphic(sub, complete_graph(3))
    assert relabel == {1: 0, 3: 1, 4: 2}
    sub, _ = induced(cycle_graph(5), [2, 3])
    assert sub.edges() == [(0, 1)]
    # E_3(8): the five singleton Y sets follow the three X vertices
    sub, _ = induced(aes_extremal(8, 3), range(3, 8))
    assert are_isomorphic(sub, cycle_graph(5))


def test_complete_multipartite():
    assert are_isomorphic(complete_multipartite([1, 1, 1]), complete_graph(3))
    assert complete_multipartite([2, 2, 2]).num_edges == 12
    assert min_degree(complete_multipartite([5, 5])) == 5
    with pytest.raises(InputError):
        complete_multipartite([])


def test_chromatic_number_examples():
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(complete_multipartite([2, 2, 2])) == 3
    assert chromatic_number(aes_extremal(5, 2)) == 3
    assert chromatic_number(empty_graph(3)) == 1
    assert chromatic_number(empty_graph(0)) == 0


def test_chromatic_number_blowup_is_cheap():
    # twins collapse, so a 55-vertex blow-up costs the same as its quotient
    assert chromatic_number(aes_extremal(55, 4)) == 5
    q, _ = twin_quotient(aes_extremal(55, 4))
    assert q.n == 7


def test_chromatic_cap():
    # a random graph has no twins to collapse, so the cap applies to all 30
    import numpy as np
    g = random_graph(30, 0.5, np.random.default_rng(1))
    with pytest.raises(CapacityError):
        chromatic_number(g)


@pytest.mark.parametrize("sizes", [[1], [3], [1, 1], [2, 3], [1, 2, 3], [3, 3, 3],
                                   [2, 2, 2, 2], [1, 1, 1, 1, 1, 1], [4, 4, 4], [2, 5, 5]])
def test_chromatic_number_of_multipartite(sizes):
    assert chromatic_number(complete_multipartite(sizes)) == len(sizes)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_chromatic_number_is_least_colourable(g):
    chi = chromatic_number(g)
    if g.n:
        col = k_colouring(g, chi)
        assert col is not None and is_proper_colouring(g, col)
    if chi > 1:
        assert k_colouring(g, chi - 1) is None


def test_analyze_target_examples():
    c5 = analyze_target(cycle_graph(5))
    assert (c5.chi, c5.sigma) == (3, 1)
    k222 = analyze_target(complete_multipartite([2, 2, 2]))
    assert (k222.chi, k222.sigma) == (3, 2)
    assert len(k222.reducts) == 1
    assert are_isomorphic(k222.reducts[0], complete_multipartite([2, 2]))
    k122 = analyze_target(complete_multipartite([1, 2, 2]))
    assert (k122.chi, k122.sigma) == (3, 1)
    assert any(are_isomorphic(b, complete_multipartite([1, 2])) for b in k122.reducts)


@pytest.mark.parametrize("sizes", [[1, 2], [2, 2, 3], [1, 1, 3], [2, 3, 4], [3, 3]])
def test_analyze_target_sigma_is_smallest_part(sizes):
    spec = analyze_target(complete_multipartite(sizes))
    assert spec.sigma == min(sizes)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_target_invariants(h):
    spec = analyze_target(h)
    assert spec.chi == chromatic_number(h)
    assert 1 <= spec.sigma <= spec.vH // spec.chi
    assert is_proper_colouring(h, spec.colouring)
    for b in spec.reducts:
        assert chromatic_number(b) <= 2
    for a, b in itertools.combinations(spec.reducts, 2):
        assert not are_isomorphic(a, b)


def test_analyze_target_cap():
    with pytest.raises(CapacityError):
        analyze_target(cycle_graph(17))


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_isomorphism_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert are_isomorphic(g, h)


def test_non_isomorphic_same_degrees():
    # C6 versus two triangles
    two_tri = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(cycle_graph(6), two_tri)
