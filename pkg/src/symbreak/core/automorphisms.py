"""
symbreak Automorphism Engine: enumeration, stabilizers, small automorphisms and orbits.

Groups are materialised as explicit lists of image tuples. Enumeration is a
backtracking search over vertex images in id order, restricted to vertices
of the same stable colour-refinement class and pruned by adjacency
consistency with the already-mapped vertices. Because candidates are tried in
increasing order, the result comes out sorted lexicographically.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from symbreak.config.settings import settings
from symbreak.core.errors import SizeLimitError
from symbreak.core.graph import Edge, Graph, bfs_distances
from symbreak.core.models import (
    Colour,
    Permutation,
    TotalColouring,
    check_edge_colouring,
    check_total_colouring,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Permutation helpers
# ---------------------------------------------------------------------------


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    return tuple(q[x] for x in p)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def edge_image(p: Permutation, e: Edge) -> Edge:
    return Edge.of(p[e.u], p[e.v])


def is_automorphism(g: Graph, p: Sequence[int]) -> bool:
    if len(p) != g.n or sorted(p) != list(range(g.n)):
        return False
    return all(g.has_edge(p[u], p[v]) for u, v in g.edges())


# ---------------------------------------------------------------------------
# Colour refinement
# ---------------------------------------------------------------------------


def refine_colours(g: Graph, seed: Optional[Sequence[int]] = None) -> List[int]:
    """Stable colour refinement with canonical ordinals.

    Each round a vertex's signature is its colour plus the sorted multiset of
    neighbour colours; signatures are sorted before numbering, so the result
    does not depend on vertex labels and every automorphism preserves it.
    """
    colours = list(seed) if seed is not None else [g.degree(v) for v in range(g.n)]
    ordinals = {c: i for i, c in enumerate(sorted(set(colours)))}
    colours = [ordinals[c] for c in colours]
    while True:
        sigs = [
            (colours[v], tuple(sorted(colours[u] for u in g.adjacency[v])))
            for v in range(g.n)
        ]
        ordinals = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refined = [ordinals[s] for s in sigs]
        if len(ordinals) == len(set(colours)):
            return refined
        colours = refined


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _resolve_limits(search_limit: Optional[int], element_cap: Optional[int]) -> Tuple[int, int]:
    limit = settings.search_limit if search_limit is None else search_limit
    cap = settings.element_cap if element_cap is None else element_cap
    return limit, cap


def enumerate_automorphisms(
    g: Graph,
    *,
    search_limit: Optional[int] = None,
    element_cap: Optional[int] = None,
) -> Tuple[Permutation, ...]:
    """All automorphisms of g, each once, sorted lexicographically by image.

    Raises:
        SizeLimitError: g has more vertices than the search limit, or the
            group has more elements than the element cap.
    """
    limit, cap = _resolve_limits(search_limit, element_cap)
    if g.n > limit:
        raise SizeLimitError(
            f"graph has {g.n} vertices; automorphism search is limited to {limit}"
        )
    return _enumerate(g, cap)


@lru_cache(maxsize=512)
def _enumerate(g: Graph, cap: int) -> Tuple[Permutation, ...]:
    n = g.n
    adj = g.adjacency
    colours = refine_colours(g)
    cells: Dict[int, List[int]] = {}
    for v in range(n):
        cells.setdefault(colours[v], []).append(v)

    image = [-1] * n
    used = [False] * n
    found: List[Permutation] = []

    def extend(v: int) -> None:
        if v == n:
            found.append(tuple(image))
            if len(found) > cap:
                raise SizeLimitError(f"automorphism group exceeds the element cap of {cap}")
            return
        nbrs = adj[v]
        for w in cells[colours[v]]:
            if used[w]:
                continue
            w_nbrs = adj[w]
            if all((u in nbrs) == (image[u] in w_nbrs) for u in range(v)):
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    logger.debug("enumerated %d automorphisms of %r", len(found), g)
    return tuple(found)


def stabilizer_automorphisms(g: Graph, r: int, **limits) -> Tuple[Permutation, ...]:
    """Automorphisms of g fixing r."""
    g.check_vertex(r)
    return tuple(phi for phi in enumerate_automorphisms(g, **limits) if phi[r] == r)


def is_small(g: Graph, phi: Sequence[int]) -> bool:
    """True when phi maps some vertex onto one of its neighbours."""
    return any(phi[v] in g.adjacency[v] for v in range(g.n))


def small_automorphisms(g: Graph, **limits) -> Tuple[Permutation, ...]:
    return tuple(phi for phi in enumerate_automorphisms(g, **limits) if is_small(g, phi))


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of Aut(g, root) on the root's component, A_0 = {root} first.

    Orbits are ordered by distance from the root, ties by minimum vertex id.
    """
    root: int
    orbits: Tuple[FrozenSet[int], ...]
    distance: Mapping[int, int]

    def index_of(self, v: int) -> int:
        for i, orbit in enumerate(self.orbits):
            if v in orbit:
                return i
        raise KeyError(v)

    def __len__(self) -> int:
        return len(self.orbits)


def vertex_orbits(g: Graph, r: int, **limits) -> OrbitPartition:
    stabilizer = stabilizer_automorphisms(g, r, **limits)
    dist = bfs_distances(g, r)
    component = sorted(v for v, d in dist.items() if d is not None)

    assigned = set()
    orbits: List[FrozenSet[int]] = []
    for v in component:
        if v in assigned:
            continue
        orbit = frozenset(phi[v] for phi in stabilizer)
        assigned |= orbit
        orbits.append(orbit)

    orbits.sort(key=lambda orbit: (dist[min(orbit)], min(orbit)))
    return OrbitPartition(
        root=r,
        orbits=tuple(orbits),
        distance={v: dist[v] for v in component},
    )


# ---------------------------------------------------------------------------
# Colour preservation
# ---------------------------------------------------------------------------


def preserves_colours(
    g: Graph,
    phi: Sequence[int],
    edge_colours: Mapping[Edge, Colour],
    vertex_colours: Optional[Mapping[int, Colour]] = None,
) -> bool:
    """True when c(phi(x)) == c(x) for every edge (and vertex, if given)."""
    if vertex_colours is not None:
        if any(vertex_colours[phi[v]] != vertex_colours[v] for v in range(g.n)):
            return False
    return all(
        edge_colours[Edge.of(phi[e.u], phi[e.v])] == edge_colours[e] for e in g.edges()
    )


def colour_preserving_automorphisms(
    g: Graph,
    c: Union[Mapping[Edge, Colour], TotalColouring],
    **limits,
) -> Tuple[Permutation, ...]:
    """Automorphisms of g that preserve an edge or total colouring."""
    if isinstance(c, TotalColouring):
        check_total_colouring(g, c)
        edge_colours, vertex_colours = c.edges, c.vertices
    else:
        check_edge_colouring(g, c)
        edge_colours, vertex_colours = c, None
    return tuple(
        phi
        for phi in enumerate_automorphisms(g, **limits)
        if preserves_colours(g, phi, edge_colours, vertex_colours)
    )
