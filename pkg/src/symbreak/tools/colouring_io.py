"""
symbreak Colouring I/O: JSON documents for list assignments and colourings.

    lists:     {"edges": [{"u": 0, "v": 1, "list": ["a", "b", "c"]}],
                "vertices": [{"v": 0, "list": ["a", "b"]}]}
    colouring: {"edges": [{"u": 0, "v": 1, "color": "a"}],
                "vertices": [{"v": 0, "color": "a"}]}

Tokens are JSON integers or strings and stay distinct (1 is not "1").
Colouring documents may carry extra keys (verified, traces, ...), so the
output of the colouring commands loads back unchanged.
"""

import json
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

from symbreak.core.errors import GraphFormatError, ListAssignmentError
from symbreak.core.graph import Edge
from symbreak.core.models import EdgeColouring, ListAssignment, TotalColouring

Token = Union[StrictInt, StrictStr]


class EdgeListEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    u: int
    v: int
    tokens: List[Token] = Field(alias="list", min_length=1)


class VertexListEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)
    v: int
    tokens: List[Token] = Field(alias="list", min_length=1)


class ListAssignmentDocument(BaseModel):
    edges: List[EdgeListEntry]
    vertices: Optional[List[VertexListEntry]] = None


class EdgeColourEntry(BaseModel):
    u: int
    v: int
    color: Token


class VertexColourEntry(BaseModel):
    v: int
    color: Token


class ColouringDocument(BaseModel):
    edges: List[EdgeColourEntry]
    vertices: Optional[List[VertexColourEntry]] = None


def to_json(payload: Any) -> str:
    """Stable JSON text: two-space indent, sorted keys."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(payload, indent=2, sort_keys=True)


def _load(text: str, model, error):
    try:
        return model.model_validate_json(text)
    except ValidationError as exc:
        raise error(f"invalid {model.__name__}: {exc.errors()[0]['msg']}") from None


def _edge(u: int, v: int, error) -> Edge:
    try:
        return Edge.of(u, v)
    except GraphFormatError as exc:
        raise error(str(exc)) from None


# ---------------------------------------------------------------------------
# List assignments
# ---------------------------------------------------------------------------


def load_list_assignment(text: str) -> ListAssignment:
    doc = _load(text, ListAssignmentDocument, ListAssignmentError)
    edges: Dict[Tuple[int, int], List] = {}
    for entry in doc.edges:
        e = _edge(entry.u, entry.v, ListAssignmentError)
        if e in edges:
            raise ListAssignmentError(f"edge {tuple(e)} listed twice")
        edges[e] = entry.tokens
    vertices = None
    if doc.vertices is not None:
        vertices = {}
        for entry in doc.vertices:
            if entry.v in vertices:
                raise ListAssignmentError(f"vertex {entry.v} listed twice")
            vertices[entry.v] = entry.tokens
    return ListAssignment.build(edges, vertices)


def list_assignment_document(lists: ListAssignment) -> ListAssignmentDocument:
    edges = [
        EdgeListEntry(u=e.u, v=e.v, tokens=list(lists.edge_lists[e]))
        for e in sorted(lists.edge_lists)
    ]
    vertices = None
    if lists.vertex_lists is not None:
        vertices = [
            VertexListEntry(v=v, tokens=list(lists.vertex_lists[v]))
            for v in sorted(lists.vertex_lists)
        ]
    return ListAssignmentDocument(edges=edges, vertices=vertices)


# ---------------------------------------------------------------------------
# Colourings
# ---------------------------------------------------------------------------


def colouring_document(c: Union[EdgeColouring, TotalColouring]) -> ColouringDocument:
    if isinstance(c, TotalColouring):
        return ColouringDocument(
            edges=[EdgeColourEntry(u=e.u, v=e.v, color=c.edges[e]) for e in sorted(c.edges)],
            vertices=[VertexColourEntry(v=v, color=c.vertices[v]) for v in sorted(c.vertices)],
        )
    return ColouringDocument(
        edges=[EdgeColourEntry(u=e.u, v=e.v, color=c[e]) for e in sorted(c)]
    )


def load_colouring(text: str) -> Tuple[EdgeColouring, Optional[Dict[int, Any]]]:
    """Edge colours and, when the document has them, vertex colours."""
    doc = _load(text, ColouringDocument, GraphFormatError)
    edges: EdgeColouring = {}
    for entry in doc.edges:
        e = _edge(entry.u, entry.v, GraphFormatError)
        if e in edges:
            raise GraphFormatError(f"edge {tuple(e)} coloured twice")
        edges[e] = entry.color
    if doc.vertices is None:
        return edges, None
    vertices: Dict[int, Any] = {}
    for entry in doc.vertices:
        if entry.v in vertices:
            raise GraphFormatError(f"vertex {entry.v} coloured twice")
        vertices[entry.v] = entry.color
    return edges, vertices


def load_total_colouring(text: str) -> TotalColouring:
    edges, vertices = load_colouring(text)
    if vertices is None:
        raise GraphFormatError("a total colouring needs a \"vertices\" array")
    return TotalColouring(edges=edges, vertices=vertices)
