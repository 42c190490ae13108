import io

import pytest

from plcc.constructions import cycle, g8, h_family, path, random_chordal
from plcc.graph import Graph, GraphFormatError, format_graph, iter_bits, parse_graph, read_graph, write_graph


def test_edges_are_normalized_and_adjacency_symmetric():
    g = Graph.from_edges(4, [(2, 0), (0, 2), (3, 1)])
    assert g.edges == frozenset({(0, 2), (1, 3)})
    for u in g.vertices():
        for w in g.adj[u]:
            assert u in g.adj[w]
        assert g.degree(u) == len(g.adj[u]) == bin(g.masks[u]).count("1")


def test_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_empty_and_single_vertex_graphs():
    assert Graph(0).components() == []
    assert Graph(0).is_connected()
    assert Graph(1).components() == [[0]]


def test_graphs_hash_by_value():
    assert Graph.from_edges(3, [(0, 1)]) == Graph.from_edges(3, [(1, 0)])
    assert len({cycle(5), cycle(5), path(5)}) == 2


def test_induced_relabels_in_order():
    sub, ids = cycle(6).induced([5, 0, 1])
    assert ids == [0, 1, 5]
    assert sub.sorted_edges() == [(0, 1), (0, 2)]
    rest, ids = cycle(6).remove([0])
    assert ids == [1, 2, 3, 4, 5] and rest == path(5)


def test_components_sorted_by_smallest_member():
    g = Graph.from_edges(6, [(4, 5), (1, 3)])
    assert g.components() == [[0], [1, 3], [2], [4, 5]]


def test_clique_and_independence_predicates():
    g = g8()
    assert g.is_independent([0, 2, 4])
    assert not g.is_independent([0, 1])
    assert g.is_clique([0, 1]) and not g.is_clique([0, 1, 2])


def test_iter_bits():
    assert list(iter_bits(0b101001)) == [0, 3, 5]


def test_format_is_sorted_and_one_based():
    text = format_graph(Graph.from_edges(3, [(2, 1), (0, 2)]), comment="tri")
    assert text == "c tri\np edge 3 2\ne 1 3\ne 2 3\n"


@pytest.mark.parametrize("g", [Graph(0), Graph(3), g8(), h_family(2), random_chordal(9, 3, 4)])
def test_round_trip(g, tmp_path):
    assert parse_graph(format_graph(g).splitlines()) == g
    buf = io.StringIO()
    write_graph(g, buf)
    assert parse_graph(io.StringIO(buf.getvalue())) == g
    p = tmp_path / "g.col"
    write_graph(g, str(p))
    assert read_graph(p) == g


def test_accepts_col_header_and_comments():
    g = parse_graph(["c hello", "", "p col 3 1", "e 1 2"])
    assert g.edges == {(0, 1)}


@pytest.mark.parametrize(
    "lines, lineno",
    [
        (["p edge 2 1", "e 1 3"], 2),
        (["e 1 2"], 1),
        (["p edge 2 1", "e 1 x"], 2),
        (["p edge 2 1", "e 1 1"], 2),
        (["p edge 2 1", "x 1 2"], 2),
        (["p edge 2 1", "p edge 2 1"], 2),
        (["p graph 2 1"], 1),
    ],
)
def test_parse_errors_carry_line_numbers(lines, lineno):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(lines)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_edge_count_mismatch_and_missing_header():
    with pytest.raises(GraphFormatError, match="declares 2"):
        parse_graph(["p edge 3 2", "e 1 2"])
    with pytest.raises(GraphFormatError, match="missing"):
        parse_graph(["c nothing"])
