"""
symbreak Index Computation: exhaustive oracles for the small distinguishing indices.

D'_s(G) is the least k such that some colouring from uniform lists {1..k}
breaks every small automorphism; D'_{l,s}(G) is the least k such that every
assignment of k-lists admits one. Oracles walk list-respecting colourings in
lexicographic order (list order per edge, edges in (u, v) order) and return
the first success, so answers are reproducible. Budgets are hard limits:
a search that does not fit raises instead of sampling.
"""

import logging
import random
from typing import Iterator, List, Optional, Sequence, Tuple

from itertools import product

from symbreak.config.settings import settings
from symbreak.core.automorphisms import edge_image, small_automorphisms
from symbreak.core.errors import BudgetExceededError, K2ComponentError, ListAssignmentError
from symbreak.core.graph import Graph, k2_components
from symbreak.core.models import (
    Colour,
    EdgeColouring,
    IndexBounds,
    KFailure,
    ListAssignment,
    SmallIndexResult,
    colouring_entries,
    list_entries,
)

logger = logging.getLogger(__name__)


class _Oracle:
    """Breaking test for many colourings of one graph.

    Only the edge permutations induced by small automorphisms matter; each is
    stored as the pairs of edge positions it moves.
    """

    def __init__(self, g: Graph, limits: dict):
        self.g = g
        self.edges = g.edges()
        position = {e: i for i, e in enumerate(self.edges)}
        moves = []
        small = small_automorphisms(g, **limits)
        for phi in small:
            pairs = tuple(
                (i, position[edge_image(phi, e)])
                for i, e in enumerate(self.edges)
                if edge_image(phi, e) != e
            )
            if pairs not in moves:
                moves.append(pairs)
        self.moves = moves
        self.small_count = len(small)

    def breaks(self, colours: Sequence[Colour]) -> bool:
        return all(any(colours[i] != colours[j] for i, j in pairs) for pairs in self.moves)

    def search(self, choices: Sequence[Sequence[Colour]], budget: int) -> Tuple[Optional[Tuple[Colour, ...]], int]:
        """First breaking choice vector in lexicographic order, and how many were checked."""
        space = 1
        for options in choices:
            space *= len(options)
        if space > budget:
            raise BudgetExceededError(
                f"{space} colourings to search exceeds the budget of {budget}"
            )
        if any(not pairs for pairs in self.moves):
            # a small automorphism fixing every edge can never be broken
            return None, 0
        checked = 0
        for colours in product(*choices):
            checked += 1
            if self.breaks(colours):
                return colours, checked
        return None, checked


def _resolve_budget(budget: Optional[int]) -> int:
    return settings.budget if budget is None else budget


def _reject_k2(g: Graph) -> None:
    bad = k2_components(g)
    if bad:
        raise K2ComponentError(bad[0])


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def exists_breaking_colouring(
    g: Graph, lists: ListAssignment, *, budget: Optional[int] = None, **limits
) -> Optional[EdgeColouring]:
    """The lexicographically first list colouring breaking every small
    automorphism of g, or None when none exists.

    Raises:
        BudgetExceededError: the product of list sizes exceeds the budget.
    """
    oracle = _Oracle(g, limits)
    choices = [lists.edge_list(e) for e in oracle.edges]
    found, checked = oracle.search(choices, _resolve_budget(budget))
    logger.debug("oracle checked %d colourings of %r", checked, g)
    if found is None:
        return None
    return dict(zip(oracle.edges, found))


def small_distinguishing_index(
    g: Graph, *, budget: Optional[int] = None, **limits
) -> SmallIndexResult:
    """D'_s(g) by exhaustive search over uniform lists {1..k}, k = 1, 2, ...

    Raises:
        K2ComponentError: g has a K2 component (no k suffices).
        BudgetExceededError: k^|E| exceeds the budget before an answer is found.
    """
    _reject_k2(g)
    oracle = _Oracle(g, limits)
    budget = _resolve_budget(budget)
    failures: List[KFailure] = []
    for k in range(1, g.num_edges + 2):
        choices = [tuple(range(1, k + 1))] * len(oracle.edges)
        found, checked = oracle.search(choices, budget)
        if found is not None:
            return SmallIndexResult(
                value=k,
                witness=colouring_entries(dict(zip(oracle.edges, found))),
                failures=failures,
                small_automorphism_count=oracle.small_count,
            )
        failures.append(KFailure(k=k, colourings_checked=checked))
    raise BudgetExceededError(f"no k up to {g.num_edges + 1} breaks every small automorphism")


def random_list_assignment(
    g: Graph, k: int, palette_size: int, seed: int, with_vertices: bool = False
) -> ListAssignment:
    """Uniformly random k-subsets of {1..palette_size}, sorted, deterministic under seed.

    Edges draw first in (u, v) order, then vertices in id order.
    """
    if k < 1:
        raise ListAssignmentError(f"list size must be positive, got {k}")
    if palette_size < k:
        raise ListAssignmentError(f"palette of {palette_size} colours cannot give {k}-lists")
    rng = random.Random(seed)
    palette = range(1, palette_size + 1)
    edge_lists = {e: tuple(sorted(rng.sample(palette, k))) for e in g.edges()}
    vertex_lists = None
    if with_vertices:
        vertex_lists = {v: tuple(sorted(rng.sample(palette, k))) for v in range(g.n)}
    return ListAssignment(edge_lists, vertex_lists)


# ---------------------------------------------------------------------------
# Adversarial list assignments
# ---------------------------------------------------------------------------
#
# Whether a list assignment admits a breaking colouring depends only on which
# list slots carry equal tokens: a colouring picks one token per edge, and
# "c(e) == c(phi(e))" compares tokens for equality only. Renaming tokens
# bijectively therefore maps breaking colourings to breaking colourings, and
# tokens outside the union of the lists are never picked. So every assignment
# of k-lists to m edges is equivalent to one whose tokens are numbered in
# order of first appearance over the k*m slots (a restricted growth string),
# with the k slots of one list pairwise distinct. Enumerating those strings
# covers all assignments, whatever the palette.


def canonical_list_patterns(num_edges: int, k: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Every k-list assignment on num_edges edges up to colour renaming.

    Yields one tuple of sorted token tuples per edge; assignments that differ
    only in the order within a list are yielded once.
    """
    slots = num_edges * k
    values = [0] * slots
    seen = set()

    def extend(s: int, top: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if s == slots:
            pattern = tuple(
                tuple(sorted(values[j * k:(j + 1) * k])) for j in range(num_edges)
            )
            if pattern not in seen:
                seen.add(pattern)
                yield pattern
            return
        taken = values[s - s % k:s]
        for token in range(top + 2):
            if token in taken:
                continue
            values[s] = token
            yield from extend(s + 1, max(top, token))

    yield from extend(0, -1)


def _find_defeating_assignment(
    g: Graph, k: int, budget: int, limits: dict
) -> Tuple[Optional[ListAssignment], int]:
    oracle = _Oracle(g, limits)
    patterns = 0
    for pattern in canonical_list_patterns(len(oracle.edges), k):
        patterns += 1
        found, _ = oracle.search(pattern, budget)
        if found is None:
            return ListAssignment(dict(zip(oracle.edges, pattern))), patterns
    return None, patterns


def small_list_distinguishing_index_bounds(
    g: Graph,
    *,
    budget: Optional[int] = None,
    adversarial: bool = False,
    spot_checks: Optional[int] = None,
    seed: int = 0,
    index: Optional[SmallIndexResult] = None,
    **limits,
) -> IndexBounds:
    """Bounds on D'_{l,s}(g).

    The lower bound starts at D'_s(g) (uniform lists of one size smaller fail
    exhaustively). The upper bound is 3 by the constructive theorem,
    spot-checked on seeded random 3-lists. With adversarial=True, canonical
    list patterns close the gap for graphs with few edges. Pass index when
    D'_s(g) is already known; it is then not recomputed.
    """
    from symbreak.core.colouring import theorem_edge_colouring

    budget = _resolve_budget(budget)
    if index is None:
        index = small_distinguishing_index(g, budget=budget, **limits)
    if index.small_automorphism_count == 0:
        return IndexBounds(
            lower=1,
            upper=1,
            lower_certificate={"method": "trivial"},
            upper_certificate={"method": "exhaustive", "reason": "no small automorphisms"},
        )

    lower = index.value
    lower_certificate = {
        "method": "uniform-exhaustive",
        "failures": [f.model_dump() for f in index.failures],
    }

    checks = settings.limits.oracle.spot_checks if spot_checks is None else spot_checks
    palette = settings.limits.oracle.spot_check_palette
    for i in range(checks):
        theorem_edge_colouring(g, random_list_assignment(g, 3, palette, seed + i), **limits)
    upper = 3
    upper_certificate = {"method": "constructive", "spot_checks": checks, "palette": palette}

    if adversarial and lower < upper:
        max_edges = settings.limits.oracle.adversarial_max_edges
        if g.num_edges > max_edges:
            raise BudgetExceededError(
                f"adversarial enumeration is limited to {max_edges} edges, graph has {g.num_edges}"
            )
        for k in range(lower, upper):
            defeating, patterns = _find_defeating_assignment(g, k, budget, limits)
            if defeating is None:
                upper = k
                upper_certificate = {"method": "exhaustive", "k": k, "patterns": patterns}
                break
            lower = k + 1
            lower_certificate = {
                "method": "adversarial",
                "k": k,
                "lists": list_entries(defeating.edge_lists),
            }

    return IndexBounds(
        lower=lower,
        upper=upper,
        lower_certificate=lower_certificate,
        upper_certificate=upper_certificate,
    )
