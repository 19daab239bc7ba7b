"""
symbreak Colouring Constructor: list colourings that break small automorphisms.

Three constructions, each certified by the verifier before it is returned:

- lemma_rooted_colouring: 2-lists on edges, breaks every small automorphism
  fixing a chosen root. Orbits of the root stabilizer are processed in
  distance order; each component of an orbit is coloured recursively (its
  maximum degree is strictly smaller) and its root is pinned by the only
  "blue" edge back to an earlier orbit.
- theorem_edge_colouring: 3-lists on edges, breaks every small automorphism.
  One token ("pink") is withheld while the rooted colouring is built, then
  a local correction around the root pins it down.
- total_colouring: 2-lists on vertices and edges; the root gets a colour no
  other vertex of its component has.

Components are coloured independently: a small automorphism maps some vertex
to a neighbour, so it maps that vertex's component onto itself, and its
restriction there is a small automorphism of the component.
"""

import logging
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from symbreak.core.automorphisms import vertex_orbits
from symbreak.core.errors import (
    K2ComponentError,
    ListAssignmentError,
    PreconditionError,
    TheoremViolationError,
)
from symbreak.core.graph import (
    Edge,
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    is_k2,
    k2_components,
    max_degree,
)
from symbreak.core.models import (
    Colour,
    CorrectionTrace,
    EdgeColouring,
    ListAssignment,
    Recolouring,
    TotalColouring,
    VerifierReport,
    check_list_fidelity,
)
from symbreak.core.verifier import (
    breaks_all_small,
    breaks_all_small_rooted,
    breaks_all_small_total,
    root_is_fixed,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Private helpers
# ---------------------------------------------------------------------------


def _first(tokens: Iterable[Colour], avoid: Iterable[Colour] = ()) -> Optional[Colour]:
    """First token not in avoid, or None."""
    blocked = list(avoid)
    for t in tokens:
        if t not in blocked:
            return t
    return None


def _pick(lists: ListAssignment, e: Edge, avoid: Iterable[Colour] = ()) -> Colour:
    token = _first(lists.edge_list(e), avoid)
    if token is None:
        raise ListAssignmentError(
            f"edge {tuple(e)} has no colour outside {list(avoid)} in its list "
            f"{list(lists.edge_list(e))}"
        )
    return token


def _require_connected(h: Graph) -> None:
    if not is_connected(h):
        raise PreconditionError(f"graph must be connected: {h!r}")


def _require_degree_le2(h: Graph) -> None:
    if max_degree(h) > 2:
        raise PreconditionError(f"maximum degree is {max_degree(h)}, expected at most 2")


def _reject_k2_components(g: Graph) -> List[FrozenSet[int]]:
    bad = k2_components(g)
    if bad:
        raise K2ComponentError(bad[0])
    return connected_components(g)


def _walk(h: Graph, start: int) -> List[int]:
    """Vertices of a connected max-degree-2 graph in walk order from start,
    always stepping to the smallest unvisited neighbour."""
    order = [start]
    seen = {start}
    while True:
        nxt = [u for u in h.neighbours(order[-1]) if u not in seen]
        if not nxt:
            return order
        order.append(min(nxt))
        seen.add(order[-1])


def _lift(colouring: EdgeColouring, back: Dict[int, int]) -> EdgeColouring:
    """Rename a component colouring's vertices (new -> old)."""
    return {Edge.of(back[e.u], back[e.v]): col for e, col in colouring.items()}


def _certify(report: VerifierReport, what: str) -> None:
    if not report.ok:
        raise TheoremViolationError(
            f"{what} is preserved by the small automorphism {report.witness}"
        )


def _certify_lists(g: Graph, c: EdgeColouring, lists: ListAssignment) -> None:
    bad = check_list_fidelity(g, c, lists)
    if bad:
        raise TheoremViolationError(f"colours outside their lists on edges {bad[:5]}")


# ---------------------------------------------------------------------------
# Rooted colourings (Lemma)
# ---------------------------------------------------------------------------


def _rooted_base(h: Graph, r: int, lists: ListAssignment) -> EdgeColouring:
    """Rooted colouring of a connected path or cycle.

    A finite path has no small automorphism fixing any vertex, so first-of-list
    suffices. On a cycle the only non-trivial stabilizer element is the
    reflection through r, which swaps the two edges at r.
    """
    c = {e: _pick(lists, e) for e in h.edges()}
    if h.num_edges == h.n and h.n >= 3:
        left, right = h.incident_edges(r)
        c[right] = _pick(lists, right, avoid=[c[left]])
    return c


def _rooted(h: Graph, r: int, lists: ListAssignment, limits: dict) -> EdgeColouring:
    delta = max_degree(h)
    if delta <= 2:
        return _rooted_base(h, r, lists)

    partition = vertex_orbits(h, r, **limits)
    dist = partition.distance
    c: EdgeColouring = {}

    def assign(e: Edge, colour: Colour) -> None:
        if e in c:
            raise TheoremViolationError(f"edge {tuple(e)} coloured twice")
        c[e] = colour

    earlier = {r}
    for orbit in partition.orbits[1:]:
        orbit_graph, orbit_relabel = induced_subgraph(h, orbit)
        orbit_back = {new: old for old, new in orbit_relabel.items()}
        for piece in connected_components(orbit_graph):
            members = sorted(orbit_back[v] for v in piece)
            k_graph, k_relabel = induced_subgraph(h, members)
            if max_degree(k_graph) >= delta:
                raise TheoremViolationError(
                    f"orbit component {members} has maximum degree {max_degree(k_graph)}, "
                    f"not below {delta}"
                )
            k_back = {new: old for old, new in k_relabel.items()}
            k_colouring = _rooted(k_graph, 0, lists.relabelled(k_relabel), limits)
            for e, colour in _lift(k_colouring, k_back).items():
                assign(e, colour)

            root = members[0]
            parent = min(x for x in h.neighbours(root) if dist.get(x) == dist[root] - 1)
            special = Edge.of(root, parent)
            blue = lists.edge_list(special)[0]
            assign(special, blue)
            for v in members:
                for x in sorted(h.neighbours(v)):
                    e = Edge.of(v, x)
                    if x in earlier and e != special:
                        assign(e, _pick(lists, e, avoid=[blue]))
        earlier |= orbit

    if len(c) != h.num_edges:
        raise TheoremViolationError(f"coloured {len(c)} of {h.num_edges} edges")
    return c


def base_case_rooted_colouring(h: Graph, r: int, lists: ListAssignment, **limits) -> EdgeColouring:
    """Rooted colouring of a connected graph with maximum degree at most 2."""
    h.check_vertex(r)
    _require_connected(h)
    _require_degree_le2(h)
    c = _rooted_base(h, r, lists)
    _certify_lists(h, c, lists)
    _certify(breaks_all_small_rooted(h, r, c, **limits), "rooted base-case colouring")
    return c


def lemma_rooted_colouring(h: Graph, r: int, lists: ListAssignment, **limits) -> EdgeColouring:
    """Colour h from 2-lists so that no small automorphism fixing r survives.

    Raises:
        K2ComponentError: h is K2.
        PreconditionError: h is not connected.
        ListAssignmentError: an edge list has fewer than 2 tokens.
        SizeLimitError: h is too large for automorphism enumeration.
    """
    h.check_vertex(r)
    _require_connected(h)
    if is_k2(h):
        raise K2ComponentError(range(h.n))
    lists.require(h, 2)
    c = _rooted(h, r, lists, limits)
    _certify_lists(h, c, lists)
    _certify(breaks_all_small_rooted(h, r, c, **limits), "rooted colouring")
    return c


# ---------------------------------------------------------------------------
# Components of maximum degree at most 2
# ---------------------------------------------------------------------------


def _degree_le2(h: Graph, lists: ListAssignment) -> EdgeColouring:
    c = {e: _pick(lists, e) for e in h.edges()}
    if h.num_edges == h.n:
        cycle = _walk(h, 0)
        m = len(cycle)
        e0 = Edge.of(cycle[0], cycle[1])
        before = Edge.of(cycle[-1], cycle[0])
        after = Edge.of(cycle[1], cycle[2])
        c0 = c[e0]
        for e in h.edges():
            if e != e0:
                c[e] = _pick(lists, e, avoid=[c0])
        c[before] = _pick(lists, before, avoid=[c0, c[after]])
        logger.debug("cycle of length %d: unique colour %r on %s", m, c0, tuple(e0))
        return c

    ends = [v for v in range(h.n) if h.degree(v) <= 1]
    path = _walk(h, min(ends))
    m = len(path)
    if m % 2 == 0 and m >= 4:
        half = m // 2
        left = Edge.of(path[half - 2], path[half - 1])
        right = Edge.of(path[half], path[half + 1])
        c[right] = _pick(lists, right, avoid=[c[left]])
    return c


def degree_le2_component_colouring(h: Graph, lists: ListAssignment, **limits) -> EdgeColouring:
    """Colour a path or cycle so that every small automorphism is broken.

    Even paths get distinct colours on the two edges next to the central
    edge; cycles get one unique colour on e0 plus distinct colours on its two
    neighbouring edges.
    """
    _require_connected(h)
    _require_degree_le2(h)
    if is_k2(h):
        raise K2ComponentError(range(h.n))
    lists.require(h, 3 if h.num_edges == h.n else 2)
    c = _degree_le2(h, lists)
    _certify_lists(h, c, lists)
    _certify(breaks_all_small(h, c, **limits), "path/cycle colouring")
    return c


# ---------------------------------------------------------------------------
# Edge colouring from 3-lists (Theorem)
# ---------------------------------------------------------------------------


def _orbit_component_roots(h: Graph, r: int, limits: dict) -> Dict[int, Tuple[int, int]]:
    """vertex -> (orbit index, component root) for the orbits of Aut(h, r)."""
    partition = vertex_orbits(h, r, **limits)
    owner: Dict[int, Tuple[int, int]] = {}
    for index, orbit in enumerate(partition.orbits):
        orbit_graph, relabel = induced_subgraph(h, orbit)
        back = {new: old for old, new in relabel.items()}
        for piece in connected_components(orbit_graph):
            members = sorted(back[v] for v in piece)
            for v in members:
                owner[v] = (index, members[0])
    return owner


_REJECTED = object()


class _Correction:
    """Correction of a rooted colouring around r.

    Steps run in order. A step returns None when its case does not apply,
    a colouring when its candidate passed the verifier, or _REJECTED when it
    applied but no legal candidate verified; that sends the search to the
    fallback.
    """

    def __init__(self, h: Graph, r: int, lists: ListAssignment, base: EdgeColouring,
                 pink: Colour, trace: CorrectionTrace, limits: dict):
        self.h = h
        self.r = r
        self.lists = lists
        self.base = base
        self.pink = pink
        self.trace = trace
        self.limits = limits
        self.incident = h.incident_edges(r)

    def accept(self, candidate: EdgeColouring) -> bool:
        self.trace.attempts += 1
        return breaks_all_small(self.h, candidate, **self.limits).ok

    def recoloured(self, *changes: Tuple[Edge, Colour]) -> EdgeColouring:
        candidate = dict(self.base)
        candidate.update(changes)
        return candidate

    def run(self) -> EdgeColouring:
        for step in (self._root_fixed, self._single_pink, self._monochrome_star,
                     self._bichromatic_swap):
            result = step()
            if result is _REJECTED:
                break
            if result is not None:
                self._check_single_pink(result)
                return result
        return self._fallback()

    def _root_fixed(self):
        if not root_is_fixed(self.h, self.base, self.r, **self.limits):
            return None
        if not self.accept(self.base):
            return _REJECTED
        self.trace.branch = "none"
        return self.base

    def _single_pink(self):
        for e in self.incident:
            if self.pink not in self.lists.edge_list(e):
                continue
            candidate = self.recoloured((e, self.pink))
            if root_is_fixed(self.h, candidate, self.r, **self.limits):
                if not self.accept(candidate):
                    return _REJECTED
                self.trace.branch = "single-pink"
                return candidate
        return None

    def _monochrome_star(self):
        colours = {self.base[e] for e in self.incident}
        if len(colours) != 1:
            return None
        blue = colours.pop()
        self.trace.roles["blue"] = blue
        rx, ry = self.incident[0], self.incident[1]
        red = _first(self.lists.edge_list(ry), avoid=[self.pink, blue])
        if self.pink not in self.lists.edge_list(rx) or red is None:
            return _REJECTED
        self.trace.roles["red"] = red
        candidate = self.recoloured((rx, self.pink), (ry, red))
        if not self.accept(candidate):
            return _REJECTED
        self.trace.branch = "monochrome-star"
        return candidate

    def _bichromatic_swap(self):
        owner = _orbit_component_roots(self.h, self.r, self.limits)
        nbrs = sorted(self.h.neighbours(self.r))
        pairs = [
            (x, y) for x in nbrs for y in nbrs
            if x != y and self.base[Edge.of(self.r, x)] != self.base[Edge.of(self.r, y)]
        ]
        preferred = [(x, y) for x, y in pairs if owner[x] == owner[y] and owner[x][1] == x]
        ordered = preferred + [p for p in pairs if p not in preferred]
        for x, y in ordered:
            rx, ry = Edge.of(self.r, x), Edge.of(self.r, y)
            red = self.base[rx]
            if self.pink not in self.lists.edge_list(rx) or red not in self.lists.edge_list(ry):
                continue
            if self.accept(self.recoloured((ry, red), (rx, self.pink))):
                self.trace.branch = "bichromatic-swap"
                self.trace.roles["red"] = red
                return self.recoloured((ry, red), (rx, self.pink))
        return _REJECTED

    def _fallback(self) -> EdgeColouring:
        logger.warning(
            "correction branches did not certify a colouring of component %s; "
            "falling back to verified search", self.trace.component,
        )
        self.trace.branch = "verified-fallback"
        for size in (1, 2):
            for edges in combinations(self.incident, size):
                options = [
                    [t for t in self.lists.edge_list(e) if t != self.base[e]] for e in edges
                ]
                for tokens in product(*options):
                    candidate = self.recoloured(*zip(edges, tokens))
                    if self.accept(candidate):
                        return candidate

        from symbreak.core.index import exists_breaking_colouring

        found = exists_breaking_colouring(self.h, self.lists, **self.limits)
        if found is None:
            raise TheoremViolationError(
                f"no list colouring of component {self.trace.component} breaks every "
                "small automorphism"
            )
        return found

    def _check_single_pink(self, c: EdgeColouring) -> None:
        if self.trace.branch == "none":
            return
        count = sum(1 for colour in c.values() if colour == self.pink)
        if count != 1:
            raise TheoremViolationError(f"{count} pink edges after the {self.trace.branch} branch")


def _colour_component(h: Graph, lists: ListAssignment, limits: dict) -> Tuple[EdgeColouring, CorrectionTrace]:
    if h.num_edges == 0:
        return {}, CorrectionTrace(component=list(range(h.n)), method="trivial")
    if max_degree(h) <= 2:
        trace = CorrectionTrace(component=list(range(h.n)), method="degree-le2")
        return _degree_le2(h, lists), trace

    r = min(v for v in range(h.n) if h.degree(v) >= 3)
    pink = lists.edge_list(h.incident_edges(r)[0])[0]
    base = _rooted(h, r, lists.without(pink), limits)
    trace = CorrectionTrace(
        component=list(range(h.n)), method="lemma", root=r, roles={"pink": pink}
    )
    final = _Correction(h, r, lists, base, pink, trace, limits).run()
    trace.recolourings = [
        Recolouring(u=e.u, v=e.v, old=base[e], new=final[e])
        for e in sorted(final)
        if final[e] != base[e]
    ]
    logger.debug("component root %d: branch %s after %d attempts", r, trace.branch, trace.attempts)
    return final, trace


def _lift_trace(trace: CorrectionTrace, back: Dict[int, int]) -> CorrectionTrace:
    lifted = trace.model_copy(deep=True)
    lifted.component = sorted(back[v] for v in trace.component)
    if trace.root is not None:
        lifted.root = back[trace.root]
    lifted.recolourings = [
        Recolouring(u=min(back[rc.u], back[rc.v]), v=max(back[rc.u], back[rc.v]),
                    old=rc.old, new=rc.new)
        for rc in trace.recolourings
    ]
    return lifted


def theorem_edge_colouring(
    g: Graph, lists: ListAssignment, **limits
) -> Tuple[EdgeColouring, List[CorrectionTrace]]:
    """Edge colouring from 3-lists breaking every small automorphism of g.

    Returns:
        The colouring and one CorrectionTrace per component, in component order.

    Raises:
        K2ComponentError: g has a K2 component.
        ListAssignmentError: an edge list has fewer than 3 tokens.
        SizeLimitError: g is too large for automorphism enumeration.
        TheoremViolationError: even the exhaustive fallback failed.
    """
    components = _reject_k2_components(g)
    lists.require(g, 3)

    colouring: EdgeColouring = {}
    traces: List[CorrectionTrace] = []
    for comp in components:
        h, relabel = induced_subgraph(g, comp)
        back = {new: old for old, new in relabel.items()}
        hc, trace = _colour_component(h, lists.relabelled(relabel), limits)
        colouring.update(_lift(hc, back))
        traces.append(_lift_trace(trace, back))

    _certify_lists(g, colouring, lists)
    _certify(breaks_all_small(g, colouring, **limits), "edge colouring")
    return colouring, traces


# ---------------------------------------------------------------------------
# Total colouring from 2-lists
# ---------------------------------------------------------------------------


def total_colouring(g: Graph, lists: ListAssignment, **limits) -> TotalColouring:
    """Total colouring from 2-lists breaking every small automorphism of g.

    Each component's minimum vertex is the root: its edges come from the
    rooted colouring and the root alone keeps the first token of its list.
    """
    components = _reject_k2_components(g)
    lists.require(g, 2, vertices=True)

    edges: EdgeColouring = {}
    vertices: Dict[int, Colour] = {}
    for comp in components:
        h, relabel = induced_subgraph(g, comp)
        back = {new: old for old, new in relabel.items()}
        edges.update(_lift(_rooted(h, 0, lists.relabelled(relabel), limits), back))

        root = min(comp)
        root_colour = lists.vertex_list(root)[0]
        vertices[root] = root_colour
        for v in sorted(comp - {root}):
            token = _first(lists.vertex_list(v), avoid=[root_colour])
            if token is None:
                raise ListAssignmentError(f"vertex {v} has no colour other than {root_colour!r}")
            vertices[v] = token

        if sum(1 for v in comp if vertices[v] == root_colour) != 1:
            raise TheoremViolationError(f"root {root} does not have a unique colour")

    c = TotalColouring(edges=edges, vertices=vertices)
    _certify_lists(g, edges, lists)
    bad = [v for v in range(g.n) if vertices[v] not in lists.vertex_list(v)]
    if bad:
        raise TheoremViolationError(f"colours outside their lists on vertices {bad[:5]}")
    _certify(breaks_all_small_total(g, c, **limits), "total colouring")
    return c
