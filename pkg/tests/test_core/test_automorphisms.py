from math import factorial

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from symbreak.core.automorphisms import (
    colour_preserving_automorphisms,
    compose,
    enumerate_automorphisms,
    identity,
    inverse,
    is_automorphism,
    is_small,
    refine_colours,
    small_automorphisms,
    stabilizer_automorphisms,
    vertex_orbits,
)
from symbreak.core.certify import labelled_graphs
from symbreak.core.errors import IncompleteColouringError, SizeLimitError
from symbreak.core.graph import Edge, Graph, complete_graph, cycle_graph, path_graph, star_graph
from symbreak.core.models import TotalColouring
from symbreak.tools.graph_io import to_networkx
from tests.conftest import brute_force_automorphisms, brute_force_small


def test_k3_has_every_permutation(k3):
    assert len(enumerate_automorphisms(k3)) == 6


def test_p3_automorphisms(p3):
    assert enumerate_automorphisms(p3) == ((0, 1, 2), (2, 1, 0))


def test_c4_is_dihedral(c4):
    autos = enumerate_automorphisms(c4)
    assert len(autos) == 8
    assert list(autos) == sorted(autos)


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_order(n):
    assert len(enumerate_automorphisms(complete_graph(n))) == factorial(n)


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_order(n):
    assert len(enumerate_automorphisms(cycle_graph(n))) == 2 * n


@pytest.mark.parametrize("n", range(2, 10))
def test_path_order(n):
    assert len(enumerate_automorphisms(path_graph(n))) == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_matches_brute_force_on_every_labelled_graph(n):
    for g in labelled_graphs(n, connected_only=False):
        assert list(enumerate_automorphisms(g)) == brute_force_automorphisms(g)


def test_group_is_closed_under_composition_and_inverse():
    for g in (cycle_graph(6), complete_graph(4), star_graph(3), Graph.from_edges(5, [(0, 1), (2, 3)])):
        group = set(enumerate_automorphisms(g))
        assert identity(g.n) in group
        for p in group:
            assert inverse(p) in group
            for q in group:
                assert compose(p, q) in group


def test_permutation_helpers():
    p = (1, 2, 0)
    assert compose(p, inverse(p)) == identity(3)
    assert compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)
    assert is_automorphism(complete_graph(3), p)
    assert not is_automorphism(path_graph(3), (1, 0, 2))
    assert not is_automorphism(path_graph(3), (0, 0, 1))


def test_refinement_is_preserved_by_automorphisms():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    colours = refine_colours(g)
    for phi in enumerate_automorphisms(g):
        assert all(colours[phi[v]] == colours[v] for v in range(g.n))
    assert colours[0] == colours[1]
    assert len(set(colours)) == 5


def test_size_limit():
    with pytest.raises(SizeLimitError):
        enumerate_automorphisms(path_graph(13))
    with pytest.raises(SizeLimitError):
        enumerate_automorphisms(complete_graph(5), element_cap=100)
    assert len(enumerate_automorphisms(path_graph(13), search_limit=13)) == 2


def test_search_limit_from_environment(monkeypatch):
    monkeypatch.setenv("SYMBREAK_SEARCH_LIMIT", "4")
    with pytest.raises(SizeLimitError):
        enumerate_automorphisms(path_graph(5))


@pytest.mark.parametrize(
    "g, r, expected",
    [
        (complete_graph(3), 0, [(0, 1, 2), (0, 2, 1)]),
        (path_graph(3), 1, [(0, 1, 2), (2, 1, 0)]),
        (cycle_graph(4), 0, [(0, 1, 2, 3), (0, 3, 2, 1)]),
    ],
)
def test_stabilizer(g, r, expected):
    assert list(stabilizer_automorphisms(g, r)) == expected


def test_stabilizer_is_a_filter_of_the_group():
    for g in labelled_graphs(5):
        group = enumerate_automorphisms(g)
        for r in range(g.n):
            assert list(stabilizer_automorphisms(g, r)) == [p for p in group if p[r] == r]


def test_is_small(k3, c4):
    assert not is_small(k3, identity(3))
    assert is_small(k3, (0, 2, 1))
    assert not is_small(c4, (0, 3, 2, 1))


def test_small_automorphisms(p3, claw, c4):
    assert small_automorphisms(p3) == ()
    assert small_automorphisms(claw) == ()
    small = small_automorphisms(c4)
    assert set(small) == {(1, 2, 3, 0), (3, 0, 1, 2), (1, 0, 3, 2), (3, 2, 1, 0)}
    assert list(small) == brute_force_small(c4)


def test_vertex_orbits(claw, p3):
    partition = vertex_orbits(claw, 0)
    assert [set(o) for o in partition.orbits] == [{0}, {1, 2, 3}]
    assert partition.index_of(2) == 1

    partition = vertex_orbits(p3, 1)
    assert [set(o) for o in partition.orbits] == [{1}, {0, 2}]
    assert partition.distance == {0: 1, 1: 0, 2: 1}


def test_vertex_orbits_trivial_stabilizer_ordered_by_distance_then_id():
    g = Graph.from_edges(5, [(0, 4), (4, 1), (1, 3), (3, 2), (4, 3)])
    assert stabilizer_automorphisms(g, 0) == (identity(5),)
    partition = vertex_orbits(g, 0)
    assert [sorted(o) for o in partition.orbits] == [[0], [4], [1], [3], [2]]


def test_vertex_orbits_cover_only_the_root_component():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (3, 4)])
    partition = vertex_orbits(g, 0)
    assert len(partition) == 2
    assert set().union(*partition.orbits) == {0, 1, 2}


def test_orbits_are_stabilizer_invariant():
    for g in labelled_graphs(5):
        for r in range(g.n):
            partition = vertex_orbits(g, r)
            stabilizer = stabilizer_automorphisms(g, r)
            for orbit in partition.orbits:
                for phi in stabilizer:
                    assert {phi[v] for v in orbit} == set(orbit)


def test_colour_preserving_automorphisms(k3, c4):
    constant = {e: 1 for e in c4.edges()}
    assert colour_preserving_automorphisms(c4, constant) == enumerate_automorphisms(c4)

    rainbow = {Edge(0, 1): 1, Edge(0, 2): 2, Edge(1, 2): 3}
    assert colour_preserving_automorphisms(k3, rainbow) == (identity(3),)

    alternating = {Edge(0, 1): "red", Edge(2, 3): "red", Edge(1, 2): "blue", Edge(0, 3): "blue"}
    assert set(colour_preserving_automorphisms(c4, alternating)) == {
        (0, 1, 2, 3), (2, 3, 0, 1), (1, 0, 3, 2), (3, 2, 1, 0),
    }


def test_colour_preserving_total(k3):
    c = TotalColouring(edges={e: 1 for e in k3.edges()}, vertices={0: "a", 1: "b", 2: "b"})
    assert colour_preserving_automorphisms(k3, c) == ((0, 1, 2), (0, 2, 1))


def test_incomplete_colouring_is_rejected(k3):
    with pytest.raises(IncompleteColouringError):
        colour_preserving_automorphisms(k3, {Edge(0, 1): 1})


def _matcher_count(g: Graph) -> int:
    nxg = to_networkx(g)
    return sum(1 for _ in GraphMatcher(nxg, nxg).isomorphisms_iter())


def _gnp(n, p, seed):
    return Graph.from_edges(n, nx.gnp_random_graph(n, p, seed=seed).edges())


@pytest.mark.parametrize(
    "g",
    [
        complete_graph(6),
        cycle_graph(7),
        path_graph(7),
        star_graph(5),
        Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
        Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]),
    ],
)
def test_group_order_agrees_with_networkx(g):
    assert len(enumerate_automorphisms(g)) == _matcher_count(g)


@pytest.mark.parametrize("seed", range(12))
def test_random_group_order_agrees_with_networkx(seed):
    for n in (6, 7):
        g = _gnp(n, 0.5, seed)
        autos = enumerate_automorphisms(g)
        assert len(autos) == _matcher_count(g)
        assert all(is_automorphism(g, p) for p in autos)
