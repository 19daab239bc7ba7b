"""Shared fixtures: named graphs and a brute-force automorphism oracle."""

from itertools import permutations
from typing import List, Tuple

import pytest

from symbreak.core.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph


def pytest_addoption(parser):
    parser.addoption(
        "--run-acceptance", action="store_true", default=False,
        help="run the full-scale exhaustive sweeps",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-acceptance"):
        return
    skip = pytest.mark.skip(reason="needs --run-acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)


def brute_force_automorphisms(g: Graph) -> List[Tuple[int, ...]]:
    """Every vertex permutation that maps edges onto edges, in lexicographic order."""
    edges = set(g.edges())
    found = []
    for p in permutations(range(g.n)):
        if all(tuple(sorted((p[u], p[v]))) in edges for u, v in edges):
            found.append(p)
    return found


def brute_force_small(g: Graph) -> List[Tuple[int, ...]]:
    return [p for p in brute_force_automorphisms(g) if any(g.has_edge(v, p[v]) for v in range(g.n))]


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def claw():
    return star_graph(3)
