"""Text formats for graphs.

Graph format (line oriented): comment lines start with "c"; a header
"p <n> <m>"; then n lines "v <id> <weight>" with ids 1..n; then m lines
"e <u> <v>".  The writer emits vertex lines with ascending ids and edges
in lexicographic order.  Vertex labels of a parsed graph are the 1-based
file ids.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import WeightedGraph


def read_graph(text: str) -> WeightedGraph:
    n = m = None
    weights = {}
    edges = []
    seen_edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer header fields", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
        elif kind == "v":
            if n is None:
                raise ParseError("vertex line before header", lineno)
            if len(parts) != 3:
                raise ParseError("vertex line must be 'v <id> <weight>'", lineno)
            try:
                vid, w = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex fields", lineno) from None
            if not 1 <= vid <= n:
                raise ParseError(f"vertex id {vid} out of range 1..{n}", lineno)
            if vid in weights:
                raise ParseError(f"duplicate vertex line for id {vid}", lineno)
            if w < 0:
                raise ParseError("negative vertex weight", lineno)
            weights[vid] = w
        elif kind == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer edge fields", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge endpoint out of range 1..{n}", lineno)
            if u == v:
                raise ParseError("self-loop", lineno)
            key = frozenset((u, v))
            if key in seen_edges:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            seen_edges.add(key)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line kind {kind!r}", lineno)
    if n is None:
        raise ParseError("missing 'p' header")
    if len(weights) != n:
        raise ParseError(f"expected {n} vertex lines, found {len(weights)}")
    if len(edges) != m:
        raise ParseError(f"expected {m} edge lines, found {len(edges)}")
    labels = list(range(1, n + 1))
    return WeightedGraph(labels, [weights[i] for i in labels], edges)


def write_graph(G: WeightedGraph, comments=()) -> str:
    """Canonical text form; vertices are renumbered 1..n in current order."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {G.n} {G.edge_count()}")
    for i in range(G.n):
        lines.append(f"v {i + 1} {G.weights[i]}")
    for u, v in sorted(G.edges_ids()):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
