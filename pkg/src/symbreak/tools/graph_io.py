"""
symbreak Graph I/O: graph6 and edge-list codecs plus networkx interop.

graph6 support is limited to the single-byte order form (n <= 62). Bits of
the upper adjacency triangle are packed column by column,
(0,1), (0,2), (1,2), (0,3), ..., six to a byte, offset by 63.
"""

import logging
from typing import Dict, List, Tuple

import networkx as nx

from symbreak.config.settings import settings
from symbreak.core.errors import GraphFormatError, SizeLimitError
from symbreak.core.graph import Graph

logger = logging.getLogger(__name__)

GRAPH6_MAX_ORDER = 62

_GRAPH6_HEADER = ">>graph6<<"
_MIN_BYTE = 63
_MAX_BYTE = 126


def _triangle_pairs(n: int):
    """Upper-triangle pairs in graph6 (column-major) order."""
    for j in range(1, n):
        for i in range(j):
            yield i, j


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode a single-byte-order graph6 string.

    Raises:
        GraphFormatError: bad header byte, characters outside 63..126,
            wrong payload length or nonzero padding bits.
    """
    data = text.strip()
    if data.startswith(_GRAPH6_HEADER):
        data = data[len(_GRAPH6_HEADER):]
    if not data:
        raise GraphFormatError("empty graph6 string")

    for pos, ch in enumerate(data):
        if not _MIN_BYTE <= ord(ch) <= _MAX_BYTE:
            raise GraphFormatError(f"graph6 character {ch!r} at position {pos} is out of range")

    n = ord(data[0]) - _MIN_BYTE
    if n > GRAPH6_MAX_ORDER:
        raise GraphFormatError(
            f"graph6 header byte {data[0]!r} denotes a multi-byte order; "
            f"only n <= {GRAPH6_MAX_ORDER} is supported"
        )

    num_bits = n * (n - 1) // 2
    expected = (num_bits + 5) // 6
    payload = data[1:]
    if len(payload) != expected:
        raise GraphFormatError(
            f"graph6 payload has {len(payload)} bytes, expected {expected} for n={n}"
        )

    bits: List[int] = []
    for ch in payload:
        value = ord(ch) - _MIN_BYTE
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[num_bits:]):
        raise GraphFormatError("graph6 padding bits must be zero")

    edges = [pair for pair, bit in zip(_triangle_pairs(n), bits) if bit]
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode g as graph6 (no header)."""
    if g.n > GRAPH6_MAX_ORDER:
        raise GraphFormatError(f"graph6 encoding supports n <= {GRAPH6_MAX_ORDER}, got {g.n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _triangle_pairs(g.n)]
    bits.extend([0] * (-len(bits) % 6))

    chars = [chr(g.n + _MIN_BYTE)]
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start:start + 6]:
            value = (value << 1) | bit
        chars.append(chr(value + _MIN_BYTE))
    return "".join(chars)


# ---------------------------------------------------------------------------
# Edge lists
# ---------------------------------------------------------------------------


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: {token!r} is not an integer") from None
    if value < 0:
        raise GraphFormatError(f"line {lineno}: negative vertex id {value}")
    return value


def read_edge_list(text: str) -> Tuple[Graph, Dict[int, int]]:
    """Parse "u v" lines with an optional leading "n <count>" line.

    Blank lines and '#' comments are skipped. Duplicate edges merge; loops
    are rejected. With a declared n every id must be below it and ids are
    kept. Without one, ids that are not exactly 0..k-1 are relabelled in
    increasing order.

    Returns:
        The graph and the relabel map input id -> vertex id.

    Raises:
        GraphFormatError: malformed lines or an id at or above the declared n.
        SizeLimitError: the graph would have more than settings.max_order vertices.
    """
    declared = None
    pairs: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if declared is not None or pairs:
                raise GraphFormatError(f"line {lineno}: 'n' must be the first line")
            if len(tokens) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'n <count>'")
            declared = _parse_int(tokens[1], lineno)
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertex ids, got {line!r}")
        u, v = (_parse_int(t, lineno) for t in tokens)
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop {u} {v} is not allowed")
        pairs.append((u, v))

    ids = sorted({x for pair in pairs for x in pair})
    if declared is not None and ids and ids[-1] >= declared:
        raise GraphFormatError(f"declared n={declared} but vertex {ids[-1]} appears")
    n = len(ids) if declared is None else declared
    if n > settings.max_order:
        raise SizeLimitError(f"graph has {n} vertices; input is limited to {settings.max_order}")

    if declared is None:
        relabel = {old: new for new, old in enumerate(ids)}
    else:
        relabel = {v: v for v in range(n)}
    if any(old != new for old, new in relabel.items()):
        logger.info("relabelled %d sparse vertex ids to 0..%d", n, n - 1)
    return Graph.from_edges(n, ((relabel[u], relabel[v]) for u, v in pairs)), relabel


def parse_edge_list(text: str) -> Graph:
    """Edge-list graph without the relabel map (see read_edge_list)."""
    return read_edge_list(text)[0]


def encode_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def detect_format(text: str) -> str:
    """Return "graph6" when the only non-blank line is one whitespace-free token."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) == 1 and len(lines[0].split()) == 1:
        return "graph6"
    return "edges"


def read_graph(text: str, fmt: str = "auto") -> Tuple[Graph, Dict[int, int]]:
    """Parse text as graph6 or an edge list; fmt is "auto", "graph6" or "edges".

    Returns the graph and the map input id -> vertex id (identity for graph6).
    """
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "graph6":
        g = parse_graph6(text)
        return g, {v: v for v in range(g.n)}
    if fmt == "edges":
        return read_edge_list(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}")


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    return read_graph(text, fmt)[0]


# ---------------------------------------------------------------------------
# networkx interop
# ---------------------------------------------------------------------------


def from_networkx(nx_graph: nx.Graph) -> Tuple[Graph, Dict]:
    """Convert an undirected networkx graph, relabelling nodes densely in sorted order.

    Returns:
        The graph and the relabel map original node -> vertex id.
    """
    if nx_graph.is_directed() or nx_graph.is_multigraph():
        raise GraphFormatError("only simple undirected graphs are supported")
    if nx.number_of_selfloops(nx_graph):
        raise GraphFormatError("graph has self-loops")
    try:
        nodes = sorted(nx_graph.nodes())
    except TypeError:
        nodes = list(nx_graph.nodes())
    relabel = {node: i for i, node in enumerate(nodes)}
    edges = [(relabel[a], relabel[b]) for a, b in nx_graph.edges()]
    return Graph.from_edges(len(nodes), edges), relabel


def to_networkx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out
