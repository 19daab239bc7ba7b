import networkx as nx
import pytest

from symbreak.core.certify import labelled_graphs
from symbreak.core.errors import GraphFormatError, SizeLimitError
from symbreak.core.graph import Edge, Graph, complete_graph, cycle_graph, path_graph
from symbreak.tools.graph_io import (
    detect_format,
    encode_edge_list,
    encode_graph6,
    from_networkx,
    parse_edge_list,
    parse_graph,
    parse_graph6,
    read_edge_list,
    read_graph,
    to_networkx,
)


def nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()


def test_parse_graph6_examples():
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6("@") == Graph.from_edges(1, [])
    assert parse_graph6("Cl") == cycle_graph(4)
    assert parse_graph6(">>graph6<<Bw\n") == complete_graph(3)
    assert parse_graph6("?") == Graph.from_edges(0, [])


@pytest.mark.parametrize("text", ["", "Bx", "B", "Bww", "B\x7f", "~??"])
def test_parse_graph6_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph6(text)


@pytest.mark.parametrize("n", range(0, 6))
def test_graph6_agrees_with_networkx(n):
    for g in labelled_graphs(n, connected_only=False):
        text = encode_graph6(g)
        assert text == nx_graph6(g)
        assert parse_graph6(text) == g


def test_graph6_round_trip_on_larger_graphs():
    for g in (cycle_graph(8), path_graph(62), complete_graph(12)):
        assert parse_graph6(encode_graph6(g)) == g
    with pytest.raises(GraphFormatError):
        encode_graph6(path_graph(63))


def test_parse_edge_list_examples():
    assert parse_edge_list("0 1\n1 2") == path_graph(3)
    g = parse_edge_list("n 4\n0 1")
    assert g.n == 4 and g.edges() == [Edge(0, 1)]
    assert parse_edge_list("0 1\n0 1").edges() == [Edge(0, 1)]
    assert parse_edge_list("# triangle\n\n0 1\n1 2  # spoke\n2 0\n") == complete_graph(3)


@pytest.mark.parametrize(
    "text", ["0 -1", "1 1", "0 x", "0 1 2", "0 1\nn 3", "n 2\n0 2", "n"]
)
def test_parse_edge_list_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_edge_list(text)


def test_edge_list_round_trip():
    g = Graph.from_edges(6, [(0, 5), (1, 2)])
    assert parse_edge_list(encode_edge_list(g)) == g


def test_format_detection():
    assert detect_format("Bw\n") == "graph6"
    assert detect_format("0 1\n1 2\n") == "edges"
    assert detect_format("n 3\n") == "edges"
    assert parse_graph("Bw") == complete_graph(3)
    assert parse_graph("0 1\n1 2\n2 0\n") == complete_graph(3)
    assert parse_graph("n 2", fmt="edges") == Graph.from_edges(2, [])
    with pytest.raises(GraphFormatError):
        parse_graph("Bw", fmt="sparse6")


def test_networkx_interop():
    nxg = nx.Graph([("b", "c"), ("a", "b")])
    g, relabel = from_networkx(nxg)
    assert relabel == {"a": 0, "b": 1, "c": 2}
    assert g == path_graph(3)
    assert nx.is_isomorphic(to_networkx(g), nxg)

    with pytest.raises(GraphFormatError):
        from_networkx(nx.DiGraph([(0, 1)]))
    with pytest.raises(GraphFormatError):
        from_networkx(nx.Graph([(0, 0)]))


def test_sparse_edge_list_ids_are_relabelled():
    g, relabel = read_edge_list("0 2000000")
    assert g == path_graph(2)
    assert relabel == {0: 0, 2000000: 1}

    g, relabel = read_edge_list("5 7\n7 9\n")
    assert g == path_graph(3)
    assert relabel == {5: 0, 7: 1, 9: 2}


def test_declared_order_keeps_ids():
    g, relabel = read_edge_list("n 6\n0 5\n1 2")
    assert g == Graph.from_edges(6, [(0, 5), (1, 2)])
    assert relabel == {v: v for v in range(6)}


def test_order_limit(monkeypatch):
    with pytest.raises(SizeLimitError):
        read_edge_list("n 2000000")
    monkeypatch.setenv("SYMBREAK_MAX_ORDER", "3")
    with pytest.raises(SizeLimitError):
        read_edge_list("0 1\n1 2\n2 3")
    assert read_edge_list("10 20\n20 30")[0] == path_graph(3)


def test_graph6_reads_keep_ids():
    g, relabel = read_graph("Bw")
    assert g == complete_graph(3)
    assert relabel == {0: 0, 1: 1, 2: 2}
