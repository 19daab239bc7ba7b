import pytest

from symbreak.core.certify import (
    certify_component_reduction,
    certify_index_bound,
    certify_lemma,
    certify_sharpness,
    certify_theorem,
    certify_total,
    connected_corpus,
    labelled_graphs,
    sharpness_graphs,
)
from symbreak.core.graph import is_connected


@pytest.mark.parametrize("n, total, connected", [(1, 1, 1), (2, 2, 1), (3, 8, 4), (4, 64, 38)])
def test_labelled_graph_counts(n, total, connected):
    assert sum(1 for _ in labelled_graphs(n, connected_only=False)) == total
    graphs = list(labelled_graphs(n))
    assert len(graphs) == connected
    assert all(is_connected(g) for g in graphs)


def test_labelled_graphs_start_empty_and_end_complete():
    graphs = list(labelled_graphs(4, connected_only=False))
    assert graphs[0].num_edges == 0
    assert graphs[-1].num_edges == 6


def test_sharpness_graphs():
    assert list(sharpness_graphs()) == ["K3", "K4", "K5", "C5"]


def test_certify_theorem_small_corpus():
    summary = certify_theorem(connected_corpus(4), seeds=3)
    assert summary.ok
    assert summary.cases == 42 * 3
    assert sum(summary.branch_counts.values()) > 0


def test_certify_lemma_small_corpus():
    summary = certify_lemma(connected_corpus(4), seeds=2)
    assert summary.ok
    assert summary.cases == (4 * 3 + 38 * 4) * 2


def test_certify_total_small_corpus():
    summary = certify_total(connected_corpus(4), seeds=2)
    assert summary.ok
    assert summary.failure_examples == []


def test_certify_component_reduction():
    summary = certify_component_reduction(samples=60, max_n=6, seed=3)
    assert summary.ok
    assert summary.cases == 60
    assert sum(summary.branch_counts.values()) == 60


def test_certify_sharpness():
    summary = certify_sharpness()
    assert summary.ok
    assert summary.cases == 4
    assert summary.values == {"K3": 3, "K4": 3, "K5": 3, "C5": 3}
    assert summary.bounds == {"K3": [3, 3], "K4": [3, 3], "K5": [3, 3], "C5": [3, 3]}


def test_certify_index_bound_small_corpus():
    summary = certify_index_bound(connected_corpus(4))
    assert summary.ok
    assert summary.cases == 42
    assert set(summary.values) <= {"1", "2", "3"}


@pytest.mark.acceptance
def test_theorem_acceptance():
    summary = certify_theorem(connected_corpus(6), seeds=20, palette=9)
    assert summary.ok, summary.failure_examples


@pytest.mark.acceptance
def test_lemma_acceptance():
    summary = certify_lemma(connected_corpus(6), seeds=5, palette=9)
    assert summary.ok, summary.failure_examples


@pytest.mark.acceptance
def test_total_acceptance():
    summary = certify_total(connected_corpus(6), seeds=10, palette=9)
    assert summary.ok, summary.failure_examples


@pytest.mark.acceptance
def test_index_bound_acceptance():
    summary = certify_index_bound(connected_corpus(6))
    assert summary.ok, summary.failure_examples


@pytest.mark.acceptance
def test_component_reduction_acceptance():
    summary = certify_component_reduction(samples=1000, max_n=8, seed=0)
    assert summary.ok, summary.failure_examples
