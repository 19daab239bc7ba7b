from itertools import product

import pytest

from symbreak.core.automorphisms import is_small
from symbreak.core.certify import labelled_graphs
from symbreak.core.errors import IncompleteColouringError
from symbreak.core.graph import Edge, Graph, complete_graph, connected_components, cycle_graph, induced_subgraph
from symbreak.core.models import TotalColouring
from symbreak.core.verifier import (
    breaks_all_small,
    breaks_all_small_rooted,
    breaks_all_small_total,
    breaks_all_small_total_rooted,
    preserves_edge_colouring,
    preserves_total,
    root_is_fixed,
)


def constant(g, colour=1):
    return {e: colour for e in g.edges()}


def test_preserves_edge_colouring(k3, c4):
    assert preserves_edge_colouring(k3, (0, 1, 2), {Edge(0, 1): "a", Edge(0, 2): "b", Edge(1, 2): "x"})
    assert not preserves_edge_colouring(
        k3, (0, 2, 1), {Edge(0, 1): "a", Edge(0, 2): "b", Edge(1, 2): "x"}
    )
    alternating = {Edge(0, 1): "red", Edge(2, 3): "red", Edge(1, 2): "blue", Edge(0, 3): "blue"}
    assert preserves_edge_colouring(c4, (2, 3, 0, 1), alternating)


def test_breaks_all_small(p3, k3):
    assert breaks_all_small(p3, constant(p3)).ok

    report = breaks_all_small(k3, constant(k3))
    assert not report.ok
    assert report.witness == [0, 2, 1]

    assert breaks_all_small(k3, {Edge(0, 1): 1, Edge(0, 2): 2, Edge(1, 2): 3}).ok


def test_witness_is_a_preserved_small_automorphism():
    g = cycle_graph(6)
    c = {Edge.of(i, (i + 1) % 6): i % 2 for i in range(6)}
    report = breaks_all_small(g, c)
    assert not report.ok
    assert is_small(g, report.witness)
    assert preserves_edge_colouring(g, report.witness, c)
    assert report.checked_count >= 1


def test_tokens_of_different_types_stay_distinct(k3):
    c = {Edge(0, 1): 1, Edge(0, 2): "1", Edge(1, 2): "one"}
    assert breaks_all_small(k3, c).ok


def test_rooted(c4, c5):
    for colours in product((1, 2), repeat=4):
        assert breaks_all_small_rooted(c4, 0, dict(zip(c4.edges(), colours))).ok

    report = breaks_all_small_rooted(c5, 0, constant(c5))
    assert not report.ok
    assert report.witness == [0, 4, 3, 2, 1]

    c = constant(c5)
    c[Edge(0, 4)] = 2
    assert breaks_all_small_rooted(c5, 0, c).ok


def test_root_is_fixed(k3):
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)])
    c = {Edge(0, 1): 1, Edge(0, 2): 2, Edge(0, 3): 3, Edge(1, 4): 1, Edge(4, 5): 1}
    assert root_is_fixed(g, c, 0)
    assert not root_is_fixed(k3, constant(k3), 1)

    tailed = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 0)])
    assert root_is_fixed(tailed, constant(tailed), 3)


def test_total(k3):
    same = TotalColouring(edges=constant(k3), vertices={v: 1 for v in range(3)})
    assert not breaks_all_small_total(k3, same).ok

    c = TotalColouring(
        edges={Edge(0, 1): 1, Edge(0, 2): 2, Edge(1, 2): 1}, vertices={0: 1, 1: 2, 2: 2}
    )
    assert breaks_all_small_total(k3, c).ok
    assert preserves_total(k3, (0, 1, 2), c)
    assert not preserves_total(k3, (0, 2, 1), c)


def test_unique_root_colour_fixes_root(k3):
    edges = constant(k3)
    c = TotalColouring(edges=edges, vertices={0: "r", 1: "x", 2: "x"})
    report = breaks_all_small_total_rooted(k3, 0, c)
    assert not report.ok
    assert report.witness == [0, 2, 1]
    assert not breaks_all_small_total(k3, c).ok


def test_incomplete_colourings(k3):
    with pytest.raises(IncompleteColouringError):
        breaks_all_small(k3, {Edge(0, 1): 1})
    with pytest.raises(IncompleteColouringError):
        breaks_all_small_total(k3, TotalColouring(edges=constant(k3), vertices={0: 1}))


def test_refining_a_colouring_keeps_it_broken():
    g = complete_graph(4)
    for colours in product((1, 2, 3), repeat=g.num_edges):
        c = dict(zip(g.edges(), colours))
        if not breaks_all_small(g, c).ok:
            continue
        for e in g.edges():
            finer = dict(c)
            finer[e] = ("split", c[e])
            assert breaks_all_small(g, finer).ok


def _restricted(g, comp, c):
    h, relabel = induced_subgraph(g, comp)
    return h, {
        Edge.of(relabel[e.u], relabel[e.v]): colour for e, colour in c.items() if e.u in relabel
    }


@pytest.mark.parametrize("n", range(2, 6))
def test_component_reduction_exhaustive(n):
    for g in labelled_graphs(n, connected_only=False):
        if len(connected_components(g)) < 2 or g.num_edges > 5:
            continue
        for colours in product((1, 2), repeat=g.num_edges):
            c = dict(zip(g.edges(), colours))
            parts = all(
                breaks_all_small(*_restricted(g, comp, c)).ok for comp in connected_components(g)
            )
            assert breaks_all_small(g, c).ok == parts
