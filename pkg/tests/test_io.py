import pytest
from hypothesis import given, settings

from aesstab.errors import Graph6Error, InputError
from aesstab.graph import build_graph, complete_graph, empty_graph, random_graph
from aesstab.io import (parse_edge_list, parse_graph6, read_graphs, serialize_edge_list,
                        serialize_graph6, write_graph6)

from conftest import graphs


def test_graph6_known_strings():
    assert serialize_graph6(empty_graph(1)) == "@"
    assert serialize_graph6(complete_graph(3)) == "Bw"
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)
    # C5 as written by nauty's geng
    c5 = parse_graph6("Dhc")
    assert sorted(c5.degrees()) == [2] * 5


def test_graph6_round_trip_random(rng):
    for _ in range(1000):
        n = int(rng.integers(0, 33))
        g = random_graph(n, float(rng.random()), rng)
        assert parse_graph6(serialize_graph6(g)) == g


def test_graph6_long_header():
    g = build_graph(70, [(0, 69), (5, 6)])
    text = serialize_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=12))
def test_graph6_round_trip_property(g):
    assert parse_graph6(serialize_graph6(g)) == g


@pytest.mark.parametrize("bad, offset", [("", 0), ("D~", 2), ("Bw?", 2), ("D\x01{", 1),
                                          ("B{", 1)])
def test_graph6_errors_carry_offset(bad, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(bad)
    assert info.value.offset == offset


def test_edge_list_round_trip():
    g = build_graph(5, [(0, 1), (2, 4)])
    text = serialize_edge_list(g)
    assert text.splitlines()[0] == "5 2"
    assert parse_edge_list(text) == g
    assert parse_edge_list("# comment\n3 1\n0 2\n") == build_graph(3, [(0, 2)])


@pytest.mark.parametrize("text", ["3 2\n0 1\n", "3 1\n0 5\n", "x y\n", "3 1\n0 0\n"])
def test_edge_list_errors(text):
    with pytest.raises(InputError):
        parse_edge_list(text)


def test_read_and_write_files(tmp_path):
    path = tmp_path / "g.g6"
    write_graph6(path, [complete_graph(3), empty_graph(2)], provenance="construction=test")
    assert path.read_text().splitlines()[-1] == "# construction=test"
    assert read_graphs(path) == [complete_graph(3), empty_graph(2)]
    el = tmp_path / "g.txt"
    el.write_text(serialize_edge_list(complete_graph(4)))
    assert read_graphs(el) == [complete_graph(4)]
    (tmp_path / "empty.g6").write_text("# nothing\n")
    with pytest.raises(InputError):
        read_graphs(tmp_path / "empty.g6")
