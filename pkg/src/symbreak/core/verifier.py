"""
symbreak Verifier: decides whether a colouring breaks every small automorphism.

This is the certification authority for the constructors: it always walks
the full automorphism list of the whole graph (components included) and
never relies on the per-component reduction the constructors use. On failure
the witness is the first preserved small automorphism in the engine's order.
"""

from typing import Iterable, Mapping, Optional, Sequence

from symbreak.core.automorphisms import (
    enumerate_automorphisms,
    is_small,
    preserves_colours,
    stabilizer_automorphisms,
)
from symbreak.core.graph import Edge, Graph
from symbreak.core.models import (
    Colour,
    Permutation,
    TotalColouring,
    VerifierReport,
    check_edge_colouring,
    check_total_colouring,
)


def _first_preserved_small(
    g: Graph,
    candidates: Iterable[Permutation],
    edge_colours: Mapping[Edge, Colour],
    vertex_colours: Optional[Mapping[int, Colour]] = None,
) -> VerifierReport:
    checked = 0
    for phi in candidates:
        checked += 1
        if is_small(g, phi) and preserves_colours(g, phi, edge_colours, vertex_colours):
            return VerifierReport(ok=False, witness=list(phi), checked_count=checked)
    return VerifierReport(ok=True, checked_count=checked)


# ---------------------------------------------------------------------------
# Edge colourings
# ---------------------------------------------------------------------------


def preserves_edge_colouring(g: Graph, phi: Sequence[int], c: Mapping[Edge, Colour]) -> bool:
    check_edge_colouring(g, c)
    return preserves_colours(g, phi, c)


def breaks_all_small(g: Graph, c: Mapping[Edge, Colour], **limits) -> VerifierReport:
    """ok iff no small automorphism of g preserves c."""
    check_edge_colouring(g, c)
    return _first_preserved_small(g, enumerate_automorphisms(g, **limits), c)


def breaks_all_small_rooted(g: Graph, r: int, c: Mapping[Edge, Colour], **limits) -> VerifierReport:
    """ok iff no small automorphism fixing r preserves c."""
    check_edge_colouring(g, c)
    return _first_preserved_small(g, stabilizer_automorphisms(g, r, **limits), c)


def root_is_fixed(g: Graph, c: Mapping[Edge, Colour], r: int, **limits) -> bool:
    """True iff every automorphism preserving c fixes r."""
    check_edge_colouring(g, c)
    g.check_vertex(r)
    return all(
        phi[r] == r
        for phi in enumerate_automorphisms(g, **limits)
        if preserves_colours(g, phi, c)
    )


# ---------------------------------------------------------------------------
# Total colourings
# ---------------------------------------------------------------------------


def preserves_total(g: Graph, phi: Sequence[int], c: TotalColouring) -> bool:
    check_total_colouring(g, c)
    return preserves_colours(g, phi, c.edges, c.vertices)


def breaks_all_small_total(g: Graph, c: TotalColouring, **limits) -> VerifierReport:
    check_total_colouring(g, c)
    return _first_preserved_small(g, enumerate_automorphisms(g, **limits), c.edges, c.vertices)


def breaks_all_small_total_rooted(g: Graph, r: int, c: TotalColouring, **limits) -> VerifierReport:
    check_total_colouring(g, c)
    return _first_preserved_small(
        g, stabilizer_automorphisms(g, r, **limits), c.edges, c.vertices
    )
