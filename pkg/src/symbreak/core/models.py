"""
symbreak Models: list assignments, colourings and report types.

Colourings and list assignments are plain containers keyed by Edge (and
vertex id); reports that leave the library are pydantic models so the CLI can
dump them as JSON directly.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from symbreak.core.errors import IncompleteColouringError, ListAssignmentError
from symbreak.core.graph import Edge, Graph

Colour = Union[int, str]
Permutation = Tuple[int, ...]
EdgeColouring = Dict[Edge, Colour]


def _dedupe(tokens: Iterable[Colour]) -> Tuple[Colour, ...]:
    """Keep the first occurrence of each token, preserving order."""
    seen = []
    for t in tokens:
        if t not in seen:
            seen.append(t)
    return tuple(seen)


@dataclass(frozen=True)
class TotalColouring:
    """Colours on edges and vertices."""
    edges: Dict[Edge, Colour]
    vertices: Dict[int, Colour]


@dataclass(frozen=True)
class ListAssignment:
    """Ordered colour lists per edge and, optionally, per vertex.

    A list is a tuple of distinct tokens; "first token" means first in that
    order.
    """
    edge_lists: Dict[Edge, Tuple[Colour, ...]]
    vertex_lists: Optional[Dict[int, Tuple[Colour, ...]]] = None

    @classmethod
    def build(
        cls,
        edge_lists: Mapping[Tuple[int, int], Sequence[Colour]],
        vertex_lists: Optional[Mapping[int, Sequence[Colour]]] = None,
    ) -> "ListAssignment":
        """Canonicalise edge keys and drop duplicate tokens."""
        edges = {Edge.of(*e): _dedupe(tokens) for e, tokens in edge_lists.items()}
        vertices = None
        if vertex_lists is not None:
            vertices = {int(v): _dedupe(tokens) for v, tokens in vertex_lists.items()}
        return cls(edges, vertices)

    @classmethod
    def uniform(cls, g: Graph, k: int, with_vertices: bool = False) -> "ListAssignment":
        """Every list is (1, ..., k)."""
        if k < 1:
            raise ListAssignmentError(f"list size must be positive, got {k}")
        palette = tuple(range(1, k + 1))
        vertices = {v: palette for v in range(g.n)} if with_vertices else None
        return cls({e: palette for e in g.edges()}, vertices)

    def edge_list(self, e: Edge) -> Tuple[Colour, ...]:
        try:
            return self.edge_lists[e]
        except KeyError:
            raise ListAssignmentError(f"no list for edge {tuple(e)}") from None

    def vertex_list(self, v: int) -> Tuple[Colour, ...]:
        if self.vertex_lists is None or v not in self.vertex_lists:
            raise ListAssignmentError(f"no list for vertex {v}")
        return self.vertex_lists[v]

    def require(self, g: Graph, k: int, vertices: bool = False) -> None:
        """Check every edge (and vertex) of g has a list of at least k tokens."""
        for e in g.edges():
            size = len(self.edge_list(e))
            if size < k:
                raise ListAssignmentError(
                    f"edge {tuple(e)} has a list of {size} colours, at least {k} required"
                )
        if vertices:
            for v in range(g.n):
                size = len(self.vertex_list(v))
                if size < k:
                    raise ListAssignmentError(
                        f"vertex {v} has a list of {size} colours, at least {k} required"
                    )

    def without(self, token: Colour) -> "ListAssignment":
        """Remove token from every edge list."""
        return ListAssignment(
            {e: tuple(t for t in lst if t != token) for e, lst in self.edge_lists.items()},
            self.vertex_lists,
        )

    def relabelled(self, relabel: Mapping[int, int]) -> "ListAssignment":
        """Restrict to vertices in relabel and rename them (old -> new)."""
        edges = {
            Edge.of(relabel[e.u], relabel[e.v]): lst
            for e, lst in self.edge_lists.items()
            if e.u in relabel and e.v in relabel
        }
        vertices = None
        if self.vertex_lists is not None:
            vertices = {relabel[v]: lst for v, lst in self.vertex_lists.items() if v in relabel}
        return ListAssignment(edges, vertices)

    def search_space(self, g: Graph) -> int:
        """Number of list-respecting edge colourings of g."""
        size = 1
        for e in g.edges():
            size *= len(self.edge_list(e))
        return size


def colouring_entries(c: Mapping[Edge, Colour]) -> List[Dict[str, Colour]]:
    """[{"u", "v", "color"}] rows in edge order."""
    return [{"u": e.u, "v": e.v, "color": c[e]} for e in sorted(c)]


def list_entries(lists: Mapping[Edge, Sequence[Colour]]) -> List[Dict]:
    return [{"u": e.u, "v": e.v, "list": list(lists[e])} for e in sorted(lists)]


def check_edge_colouring(g: Graph, c: Mapping[Edge, Colour]) -> None:
    missing = [tuple(e) for e in g.edges() if e not in c]
    if missing:
        raise IncompleteColouringError(f"edges without a colour: {missing[:5]}")


def check_total_colouring(g: Graph, c: TotalColouring) -> None:
    check_edge_colouring(g, c.edges)
    missing = [v for v in range(g.n) if v not in c.vertices]
    if missing:
        raise IncompleteColouringError(f"vertices without a colour: {missing[:5]}")


def check_list_fidelity(g: Graph, c: Mapping[Edge, Colour], lists: ListAssignment) -> List[Edge]:
    """Edges whose colour is not in their list."""
    return [e for e in g.edges() if c[e] not in lists.edge_list(e)]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class VerifierReport(BaseModel):
    ok: bool
    witness: Optional[List[int]] = None
    checked_count: int = 0


Branch = Literal["none", "single-pink", "monochrome-star", "bichromatic-swap", "verified-fallback"]
Method = Literal["trivial", "degree-le2", "lemma"]


class Recolouring(BaseModel):
    u: int
    v: int
    old: Colour
    new: Colour


class CorrectionTrace(BaseModel):
    """How one component's colouring was obtained from the rooted colouring."""
    component: List[int]
    method: Method
    root: Optional[int] = None
    branch: Branch = "none"
    roles: Dict[str, Colour] = Field(default_factory=dict)
    recolourings: List[Recolouring] = Field(default_factory=list)
    attempts: int = 0


class KFailure(BaseModel):
    """Exhaustive record: no colouring from uniform k-lists breaks every small automorphism."""
    k: int
    colourings_checked: int


class SmallIndexResult(BaseModel):
    value: int
    witness: Optional[List[Dict[str, Colour]]] = None
    failures: List[KFailure] = Field(default_factory=list)
    small_automorphism_count: int = 0


class IndexBounds(BaseModel):
    lower: int
    upper: int
    lower_certificate: Dict = Field(default_factory=dict)
    upper_certificate: Dict = Field(default_factory=dict)


class CertificationSummary(BaseModel):
    kind: str
    cases: int = 0
    failures: int = 0
    branch_counts: Dict[str, int] = Field(default_factory=dict)
    failure_examples: List[Dict] = Field(default_factory=list)
    values: Dict[str, int] = Field(default_factory=dict)
    bounds: Dict[str, List[int]] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0
