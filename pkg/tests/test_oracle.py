import pytest
from hypothesis import given, settings, strategies as st

from aesstab.cliques import find_kts
from aesstab.errors import CapacityError
from aesstab.extremal import aes_extremal
from aesstab.graph import (analyze_target, build_graph, chromatic_number, complete_graph,
                           complete_multipartite, cycle_graph, random_graph)
from aesstab.io import parse_graph6
from aesstab.oracle import (OracleReport, biex_enumerate, biex_exact, biex_search,
                            min_deletion_to_r_partite, naive_count_cliques,
                            naive_find_subgraph, verify_aes_small,
                            verify_census_crosscheck, verify_kst_small,
                            verify_zarankiewicz_small)
from aesstab.cliques import clique_census

from conftest import graphs

C4 = [complete_multipartite([2, 2])]
# ex(n, C4) for n = 1..8, from the branch and bound and cross-checked by enumeration
EX_C4 = [0, 1, 3, 4, 6, 7, 9, 11]


def test_min_deletion_examples():
    assert min_deletion_to_r_partite(cycle_graph(5), 2) == 1
    assert min_deletion_to_r_partite(complete_graph(4), 2) == 2
    # pinned from the exhaustive 3^7 labelling sweep
    assert min_deletion_to_r_partite(aes_extremal(8, 3), 3) == 1
    assert min_deletion_to_r_partite(aes_extremal(10, 2), 2) == 4


def test_min_deletion_cap():
    with pytest.raises(CapacityError):
        min_deletion_to_r_partite(complete_graph(16), 3)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=9), st.integers(1, 3))
def test_min_deletion_zero_iff_colourable(g, r):
    assert (min_deletion_to_r_partite(g, r) == 0) == (chromatic_number(g) <= r)


def test_naive_count_examples(rng):
    assert naive_count_cliques(complete_graph(6), 4) == 15
    assert naive_count_cliques(complete_multipartite([3, 3, 3]), 4) == 0
    g = random_graph(10, 0.5, rng)
    assert naive_count_cliques(g, 3) == clique_census(g, 3).total
    with pytest.raises(CapacityError):
        naive_count_cliques(complete_graph(17), 3)


def test_naive_find_subgraph():
    assert naive_find_subgraph(complete_graph(4), complete_graph(3)) is not None
    assert naive_find_subgraph(cycle_graph(5), complete_graph(3)) is None


def test_biex_exact_examples():
    assert biex_exact(4, C4) == 4
    assert biex_exact(5, C4) == 6
    for n in range(1, 7):
        assert biex_exact(n, [complete_graph(2)]) == 0


def test_biex_exact_values_and_monotone():
    vals = [biex_exact(n, C4) for n in range(1, 9)]
    assert vals == EX_C4
    assert all(a <= b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("n", range(2, 8))
def test_biex_two_paths_agree(n):
    assert biex_enumerate(n, C4) == biex_exact(n, C4) == EX_C4[n - 1]


def test_biex_witness_is_free():
    val, witness = biex_search(7, C4)
    assert witness.num_edges == val and find_kts(witness, 2, 2) is None


def test_biex_other_families():
    k4 = analyze_target(complete_graph(4))
    assert biex_exact(6, k4) == 0
    p3 = [build_graph(3, [(0, 1), (1, 2)])]
    # P3-free means a matching
    for n in range(2, 8):
        assert biex_exact(n, p3) == biex_enumerate(n, p3) == n // 2


def test_biex_caps():
    with pytest.raises(CapacityError):
        biex_exact(9, C4)
    with pytest.raises(CapacityError):
        biex_enumerate(8, C4)


def test_report_plumbing(tmp_path):
    rep = OracleReport("demo", 3, ["Bw"], 0.5, {"n": 3})
    assert not rep.verified
    assert rep.to_csv().splitlines()[1].startswith("demo,3,1,0,")
    rep.write_sidecar(tmp_path / "bad.g6")
    assert parse_graph6((tmp_path / "bad.g6").read_text().strip()) == complete_graph(3)
    assert OracleReport("ok", 1).verified


def test_verify_aes_examples():
    rep = verify_aes_small(5, 2)
    assert rep.verified and rep.instances_checked == 2 ** 10
    rep = verify_aes_small(6, 2)
    assert rep.verified and rep.instances_checked == 2 ** 15


def test_verify_aes_sampled():
    assert verify_aes_small(9, 2, samples=300, seed=3).verified
    assert verify_aes_small(8, 3, samples=200, seed=4).verified
    with pytest.raises(CapacityError):
        verify_aes_small(30, 2)


def test_verify_zarankiewicz():
    rep = verify_zarankiewicz_small(6, 2)
    assert rep.verified and rep.params["boundary_witness"] == "ok"
    rep = verify_zarankiewicz_small(9, 3, samples=300, seed=1)
    assert rep.verified and rep.params["boundary_witness"] == "ok"


def test_verify_kst():
    assert verify_kst_small(12, 2, 2, samples=200, seed=7).verified
    assert verify_kst_small(10, 2, 3, samples=60, seed=2).verified
    with pytest.raises(CapacityError):
        verify_kst_small(15)


def test_verify_census_crosscheck():
    rep = verify_census_crosscheck(10, 4, samples=100, seed=5)
    assert rep.verified and rep.instances_checked == 104
