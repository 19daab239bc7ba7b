"""
symbreak Graph Core: immutable simple graphs and elementary queries.

Vertices are dense integers 0..n-1. A Graph is frozen after construction and
hashable, so automorphism enumeration can memoize on it.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

from symbreak.config.settings import settings
from symbreak.core.errors import GraphFormatError, InvalidVertexError


class Edge(NamedTuple):
    """An unordered vertex pair stored with u < v."""
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise GraphFormatError(f"loop at vertex {a} is not a simple-graph edge")
        return cls(a, b) if a < b else cls(b, a)

    def other(self, x: int) -> int:
        """Return the endpoint that is not x."""
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 0..n-1."""
    n: int
    adjacency: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise GraphFormatError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphFormatError(f"neighbour {u} of {v} is out of range")
                if u == v:
                    raise GraphFormatError(f"loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise GraphFormatError(f"adjacency is not symmetric at {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from vertex pairs; duplicates merge, loops are rejected."""
        rows: List[Set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise GraphFormatError(f"loop at vertex {a}")
            for x in (a, b):
                if not 0 <= x < n:
                    raise InvalidVertexError(f"vertex {x} is outside [0, {n})")
            rows[a].add(b)
            rows[b].add(a)
        return cls(n, tuple(frozenset(r) for r in rows))

    def neighbours(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def edges(self) -> List[Edge]:
        """All edges in lexicographic (u, v) order."""
        return [Edge(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def incident_edges(self, v: int) -> List[Edge]:
        """Edges at v, ordered by the other endpoint."""
        return [Edge.of(v, x) for x in sorted(self.adjacency[v])]

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v!r} is outside [0, {self.n})")

    def __repr__(self) -> str:
        body = ",".join(f"{u}-{v}" for u, v in self.edges())
        return f"Graph(n={self.n}, edges={{{body}}})"


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


def max_degree(g: Graph) -> int:
    """Maximum vertex degree; 0 for edgeless (or empty) graphs."""
    return max((len(nbrs) for nbrs in g.adjacency), default=0)


def bfs_distances(g: Graph, r: int) -> Dict[int, Optional[int]]:
    """Shortest-path distances from r in edge counts; None marks unreachable vertices."""
    g.check_vertex(r)
    dist: Dict[int, Optional[int]] = {v: None for v in range(g.n)}
    dist[r] = 0
    queue = deque([r])
    while queue:
        v = queue.popleft()
        for u in sorted(g.adjacency[v]):
            if dist[u] is None:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def connected_components(g: Graph) -> List[FrozenSet[int]]:
    """Vertex sets of the components, ordered by minimum vertex id."""
    seen = [False] * g.n
    components: List[FrozenSet[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        members = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    members.append(u)
                    stack.append(u)
        components.append(frozenset(members))

    if settings.debug_mode:
        _check_partition(g, components)
    return components


def _check_partition(g: Graph, components: List[FrozenSet[int]]) -> None:
    """Debug check: components are disjoint, cover V, and have no edges between them."""
    covered: Set[int] = set()
    for comp in components:
        if covered & comp:
            raise AssertionError(f"components overlap at {sorted(covered & comp)}")
        covered |= comp
        for v in comp:
            if not g.adjacency[v] <= comp:
                raise AssertionError(f"edge leaves component {sorted(comp)} at {v}")
    if covered != set(range(g.n)):
        raise AssertionError("components do not cover every vertex")


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Subgraph induced by s, relabelled to 0..|s|-1 in increasing id order.

    Returns:
        The new graph and the relabel map old id -> new id.
    """
    members = sorted(set(s))
    for v in members:
        g.check_vertex(v)
    relabel = {old: new for new, old in enumerate(members)}
    rows = tuple(
        frozenset(relabel[u] for u in g.adjacency[old] if u in relabel) for old in members
    )
    return Graph(len(members), rows), relabel


def is_k2(g: Graph) -> bool:
    return g.n == 2 and g.num_edges == 1


def k2_components(g: Graph) -> List[FrozenSet[int]]:
    """Components that are a single edge."""
    return [c for c in connected_components(g) if len(c) == 2 and g.has_edge(*sorted(c))]


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((a, b) for a in range(n) for b in range(a + 1, n)))


def cycle_graph(n: int) -> Graph:
    """C_n as 0-1-...-(n-1)-0; requires n >= 3."""
    if n < 3:
        raise GraphFormatError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    """P_n as 0-1-...-(n-1)."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0 and leaves 1..k."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    """Graphs placed side by side, each shifted past the previous ones."""
    edges: List[Tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)
