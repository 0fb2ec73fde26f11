from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aesstab.cliques import clique_census, find_kts, find_subgraph
from aesstab.errors import ConstructionError, InputError
from aesstab.extremal import (BiexBounds, ExtremalParams, aes_extremal,
                              aes_extremal_construction, biex_bounds, ktt_free_gadget,
                              ktt_guard, lower_bound_graph, modified_extremal,
                              polarity_graph, trim_to, turan_graph)
from aesstab.graph import (analyze_target, are_isomorphic, chromatic_number, complete_graph,
                           complete_multipartite, cycle_graph, min_degree)
from aesstab.oracle import biex_exact, min_deletion_to_r_partite

K222 = analyze_target(complete_multipartite([2, 2, 2]))
K4 = analyze_target(complete_graph(4))


def test_turan_examples():
    g = turan_graph(9, 3)
    assert are_isomorphic(g, complete_multipartite([3, 3, 3])) and min_degree(g) == 6
    assert are_isomorphic(turan_graph(5, 2), complete_multipartite([2, 3]))
    assert are_isomorphic(turan_graph(4, 4), complete_graph(4))
    with pytest.raises(InputError):
        turan_graph(3, 4)


@pytest.mark.parametrize("n,r", [(n, r) for r in (2, 3, 4) for n in range(r, 16)])
def test_turan_invariants(n, r):
    g = turan_graph(n, r)
    assert min_degree(g) == (r - 1) * n // r
    assert clique_census(g, r + 1).total == 0


def test_aes_extremal_examples():
    assert are_isomorphic(aes_extremal(5, 2), cycle_graph(5))
    g = aes_extremal(8, 3)
    assert min_degree(g) == 5
    assert clique_census(g, 4).total == 0 and chromatic_number(g) == 4
    g = aes_extremal(16, 3)
    assert min_degree(g) == 10 and clique_census(g, 4).total == 0
    with pytest.raises(InputError):
        aes_extremal(9, 3)
    with pytest.raises(InputError):
        aes_extremal(10, 1)


def test_aes_extremal_blocks():
    con = aes_extremal_construction(16, 3)
    assert sorted(con.blocks) == ["X1", "Y1", "Y2", "Y3", "Y4", "Y5"]
    assert bin(con.blocks["X1"]).count("1") == 6
    assert all(bin(con.blocks[f"Y{i}"]).count("1") == 2 for i in range(1, 6))


def test_polarity_graph_is_c4_free():
    for q in (2, 3, 5):
        g = polarity_graph(q)
        assert g.n == q * q + q + 1
        assert find_kts(g, 2, 2) is None
        assert min_degree(g) == q


def test_trim_to_keeps_dense_part():
    g = trim_to(complete_graph(6), 4)
    assert g.n == 4 and g.num_edges == 6


def test_gadget_examples():
    g = ktt_free_gadget(5, 2, 2)
    assert g.n == 5 and min_degree(g) >= 2 and find_kts(g, 2, 2) is None
    g = ktt_free_gadget(7, 2, 2)
    assert min_degree(g) >= 2 and find_kts(g, 2, 2) is None
    for m in (5, 6, 7, 8):
        with pytest.raises(ConstructionError):
            ktt_free_gadget(m, 2, m - 1)


@settings(max_examples=15, deadline=None)
@given(st.integers(4, 24), st.integers(2, 3), st.integers(0, 3))
def test_gadget_always_valid(m, t, seed):
    # the KST guard is only necessary; cycles C_m (m >= 5) show degree 2 is reachable
    min_deg = 2 if m >= 5 else 1
    assert min_deg <= ktt_guard(m, t)
    g = ktt_free_gadget(m, t, min_deg, seed=seed)
    assert g.n == m and min_degree(g) >= min_deg
    assert find_kts(g, t, t) is None


def test_extremal_params_validation():
    with pytest.raises(InputError):
        ExtremalParams(r=1, n=10)
    with pytest.raises(InputError):
        ExtremalParams(r=2, n=10, t=3, s=2)
    with pytest.raises(InputError):
        ExtremalParams(r=2, n=10, c=0)
    with pytest.raises(InputError):
        ExtremalParams(r=3, n=7)


def test_modified_extremal_r2():
    con = modified_extremal(ExtremalParams(r=2, n=25, c=Fraction(2, 5)))
    g = con.graph
    # gadgets of minimum degree 2 lift the degree above 2n/5
    assert min_degree(g) == con.info["min_degree"] == 12
    assert 5 * min_degree(g) > 2 * 25
    assert con.info["blowup_free"] is True


@pytest.mark.parametrize("n,c,opt", [(10, Fraction(1, 5), 8), (14, Fraction(1, 5), 18)])
def test_modified_extremal_deletions(n, c, opt):
    # pinned from the exhaustive bipartization oracle
    g = modified_extremal(ExtremalParams(r=2, n=n, c=c)).graph
    assert min_deletion_to_r_partite(g, 2) == opt
    assert find_subgraph(g, complete_multipartite([4, 4, 4])) is None


def test_modified_extremal_r3():
    con = modified_extremal(ExtremalParams(r=3, n=32, c=Fraction(1, 8)))
    assert con.info["blowup_free"] in (True, None)
    assert min_degree(con.graph) == con.info["min_degree"]


def test_modified_extremal_infeasible_gadget():
    with pytest.raises(ConstructionError):
        modified_extremal(ExtremalParams(r=2, n=14, c=Fraction(2, 5)))


def test_lower_bound_graph_c5():
    con = lower_bound_graph(10, 2, K222, witness=cycle_graph(5))
    g = con.graph
    assert con.info["inner_edges"] == 5
    assert min_degree(g) == 5 and 5 * min_degree(g) >= 2 * 10
    assert find_subgraph(g, K222.h) is None
    assert min_deletion_to_r_partite(g, 2) == 5


def test_lower_bound_graph_rejects_bad_witness():
    with pytest.raises(InputError):
        lower_bound_graph(10, 2, K222, witness=complete_graph(4))


def test_lower_bound_graph_edgeless_family():
    con = lower_bound_graph(9, 3, K4)
    assert are_isomorphic(con.graph, turan_graph(9, 3))


@pytest.mark.parametrize("n,r", [(8, 2), (10, 2), (12, 2), (9, 3), (12, 3)])
def test_lower_bound_graph_invariants(n, r):
    target = K222 if r == 2 else K4
    g = lower_bound_graph(n, r, target).graph
    assert min_degree(g) >= (r - 1) * n // r
    assert find_subgraph(g, target.h) is None


def test_biex_bounds_examples():
    assert biex_bounds(5, K222) == BiexBounds(6, 6, 6)
    assert biex_bounds(1, K4).exact == 0
    c5 = analyze_target(cycle_graph(5))
    # C5 has a K2 + K1 reduct, so any n >= 3 forces an edgeless graph
    assert biex_bounds(10, c5).lower == 0
    assert biex_bounds(10, c5).upper <= 10


@pytest.mark.parametrize("n", range(2, 9))
def test_biex_bounds_bracket_exact(n):
    b = biex_bounds(n, K222, exact_cap=0)
    exact = biex_exact(n, K222)
    assert b.lower <= exact <= b.upper


def test_biex_bounds_rejects_inverted():
    with pytest.raises(ValueError):
        BiexBounds(5, 4)
