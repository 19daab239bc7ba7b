"""
symbreak Certification: exhaustive property sweeps over small graphs.

Each sweep runs one constructor or oracle over a corpus of graphs and seeded
list assignments and tallies the outcome in a CertificationSummary. The CLI
`certify` subcommand and the test-suite share these functions.
"""

import logging
import random
from collections import Counter
from itertools import combinations
from typing import Dict, Iterable, Iterator, Optional

from symbreak.config.settings import settings
from symbreak.core.colouring import lemma_rooted_colouring, theorem_edge_colouring, total_colouring
from symbreak.core.errors import TheoremViolationError
from symbreak.core.graph import (
    Edge,
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    is_connected,
)
from symbreak.core.index import (
    random_list_assignment,
    small_distinguishing_index,
    small_list_distinguishing_index_bounds,
)
from symbreak.core.models import CertificationSummary, colouring_entries
from symbreak.core.verifier import breaks_all_small, breaks_all_small_rooted, breaks_all_small_total

logger = logging.getLogger(__name__)

MAX_FAILURE_EXAMPLES = 10


def labelled_graphs(n: int, connected_only: bool = True) -> Iterator[Graph]:
    """Every labelled graph on n vertices, in upper-triangle bitmask order.

    Bit i of the mask selects the i-th pair of combinations(range(n), 2).
    """
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, (p for i, p in enumerate(pairs) if mask >> i & 1))
        if connected_only and not is_connected(g):
            continue
        yield g


def connected_corpus(max_n: int, min_n: int = 3) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from labelled_graphs(n)


def sharpness_graphs() -> Dict[str, Graph]:
    """Graphs whose small list distinguishing index is exactly 3.

    C4 is not among them: colouring 01 and 23 apart and 03 and 12 apart
    breaks all four of its small automorphisms, so two colours suffice.
    """
    return {
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "C5": cycle_graph(5),
    }


def _record(summary: CertificationSummary, example: dict) -> None:
    summary.failures += 1
    if len(summary.failure_examples) < MAX_FAILURE_EXAMPLES:
        summary.failure_examples.append(example)


def certify_theorem(
    graphs: Iterable[Graph], seeds: Optional[int] = None, palette: Optional[int] = None
) -> CertificationSummary:
    """Edge colourings from seeded random 3-lists on every graph."""
    seeds = settings.limits.certify.theorem_seeds if seeds is None else seeds
    palette = settings.limits.certify.palette if palette is None else palette
    summary = CertificationSummary(kind="theorem")
    branches: Counter = Counter()
    for g in graphs:
        for seed in range(seeds):
            summary.cases += 1
            lists = random_list_assignment(g, 3, palette, seed)
            try:
                colouring, traces = theorem_edge_colouring(g, lists)
            except TheoremViolationError as exc:
                _record(summary, {"graph": repr(g), "seed": seed, "error": str(exc)})
                continue
            report = breaks_all_small(g, colouring)
            if not report.ok:
                _record(summary, {"graph": repr(g), "seed": seed, "witness": report.witness})
            branches.update(t.branch for t in traces if t.method == "lemma")
    summary.branch_counts = dict(sorted(branches.items()))
    if branches.get("verified-fallback"):
        logger.warning("verified fallback used %d times", branches["verified-fallback"])
    return summary


def certify_lemma(
    graphs: Iterable[Graph], seeds: Optional[int] = None, palette: Optional[int] = None
) -> CertificationSummary:
    """Rooted colourings from seeded random 2-lists for every root of every graph."""
    seeds = settings.limits.certify.lemma_seeds if seeds is None else seeds
    palette = settings.limits.certify.palette if palette is None else palette
    summary = CertificationSummary(kind="lemma")
    for g in graphs:
        for r in range(g.n):
            for seed in range(seeds):
                summary.cases += 1
                lists = random_list_assignment(g, 2, palette, seed)
                try:
                    c = lemma_rooted_colouring(g, r, lists)
                except TheoremViolationError as exc:
                    _record(summary, {"graph": repr(g), "root": r, "seed": seed, "error": str(exc)})
                    continue
                report = breaks_all_small_rooted(g, r, c)
                if not report.ok:
                    _record(summary, {
                        "graph": repr(g), "root": r, "seed": seed, "witness": report.witness,
                    })
    return summary


def certify_total(
    graphs: Iterable[Graph], seeds: Optional[int] = None, palette: Optional[int] = None
) -> CertificationSummary:
    """Total colourings from seeded random 2-lists on vertices and edges."""
    seeds = settings.limits.certify.total_seeds if seeds is None else seeds
    palette = settings.limits.certify.palette if palette is None else palette
    summary = CertificationSummary(kind="total")
    for g in graphs:
        for seed in range(seeds):
            summary.cases += 1
            lists = random_list_assignment(g, 2, palette, seed, with_vertices=True)
            try:
                c = total_colouring(g, lists)
            except TheoremViolationError as exc:
                _record(summary, {"graph": repr(g), "seed": seed, "error": str(exc)})
                continue
            report = breaks_all_small_total(g, c)
            if not report.ok:
                _record(summary, {"graph": repr(g), "seed": seed, "witness": report.witness})
                continue
            for comp in connected_components(g):
                root_colour = c.vertices[min(comp)]
                if sum(1 for v in comp if c.vertices[v] == root_colour) != 1:
                    _record(summary, {"graph": repr(g), "seed": seed, "root": min(comp)})
    return summary


def _random_graph(rng: random.Random, n: int) -> Graph:
    return Graph.from_edges(
        n, (p for p in combinations(range(n), 2) if rng.random() < 0.5)
    )


def certify_component_reduction(
    samples: Optional[int] = None, max_n: Optional[int] = None, seed: int = 0
) -> CertificationSummary:
    """Whole-graph verdicts against the conjunction of per-component verdicts.

    Each sample joins two random graphs side by side (so it is disconnected)
    and colours its edges from {1, 2, 3} at random.
    """
    samples = settings.limits.certify.reduction_samples if samples is None else samples
    max_n = settings.limits.certify.reduction_max_n if max_n is None else max_n
    rng = random.Random(seed)
    summary = CertificationSummary(kind="reduction")
    verdicts: Counter = Counter()
    for i in range(samples):
        left = rng.randint(1, max_n - 1)
        right = rng.randint(1, max_n - left)
        g = disjoint_union(_random_graph(rng, left), _random_graph(rng, right))
        c = {e: rng.randint(1, 3) for e in g.edges()}

        whole = breaks_all_small(g, c).ok
        parts = True
        for comp in connected_components(g):
            h, relabel = induced_subgraph(g, comp)
            hc = {
                Edge.of(relabel[e.u], relabel[e.v]): colour
                for e, colour in c.items()
                if e.u in relabel
            }
            parts = parts and breaks_all_small(h, hc).ok

        summary.cases += 1
        verdicts["broken" if whole else "preserved"] += 1
        if whole != parts:
            _record(summary, {
                "sample": i, "graph": repr(g), "colouring": colouring_entries(c),
                "whole": whole, "components": parts,
            })
    summary.branch_counts = dict(sorted(verdicts.items()))
    return summary


def certify_sharpness(budget: Optional[int] = None) -> CertificationSummary:
    """D'_s and both bounds on D'_{l,s} are exactly 3 on every sharpness graph."""
    summary = CertificationSummary(kind="sharpness")
    for name, g in sharpness_graphs().items():
        summary.cases += 1
        result = small_distinguishing_index(g, budget=budget)
        bounds = small_list_distinguishing_index_bounds(g, budget=budget, index=result)
        summary.values[name] = result.value
        summary.bounds[name] = [bounds.lower, bounds.upper]
        if result.value != 3 or (bounds.lower, bounds.upper) != (3, 3):
            _record(summary, {
                "graph": name, "value": result.value, "bounds": [bounds.lower, bounds.upper],
            })
    return summary


def certify_index_bound(graphs: Iterable[Graph], budget: Optional[int] = None) -> CertificationSummary:
    """D'_s is at most 3 on every graph."""
    summary = CertificationSummary(kind="bound")
    values: Counter = Counter()
    for g in graphs:
        summary.cases += 1
        value = small_distinguishing_index(g, budget=budget).value
        values[str(value)] += 1
        if value > 3:
            _record(summary, {"graph": repr(g), "value": value})
    summary.values = dict(sorted(values.items()))
    return summary
