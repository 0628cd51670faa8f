"""Maximum-weight matching on small edge-weighted graphs.

The solver is the blossom implementation shipped with networkx, wrapped
behind a deterministic interface; an exhaustive matcher ships alongside
as the independent oracle for the test suite.
"""

from __future__ import annotations

import networkx as nx

from .errors import InputError, InvariantError


def _node_key(u):
    return (str(type(u)), repr(u))


class AuxGraph:
    """Simple undirected graph with non-negative integer edge weights."""

    def __init__(self):
        self.nodes = []
        self._node_set = set()
        self.edges = {}

    def add_node(self, u):
        if u not in self._node_set:
            self._node_set.add(u)
            self.nodes.append(u)

    def add_edge(self, u, v, w):
        if u == v:
            raise InputError("self-loop in auxiliary graph")
        if w < 0:
            raise InvariantError(f"negative auxiliary edge weight {w} on {u!r}-{v!r}")
        key = frozenset((u, v))
        if key in self.edges:
            raise InputError(f"duplicate auxiliary edge {u!r}-{v!r}")
        self.add_node(u)
        self.add_node(v)
        self.edges[key] = int(w)

    def sorted_edges(self):
        return sorted(
            ((tuple(sorted(k, key=_node_key)), w) for k, w in self.edges.items()),
            key=lambda it: (_node_key(it[0][0]), _node_key(it[0][1])),
        )

    def weight(self, matching) -> int:
        return sum(self.edges[frozenset(e)] for e in matching)


def max_weight_matching(aux: AuxGraph):
    """Maximum total weight over all matchings (any cardinality).

    Returns (matching, weight) where the matching is a frozenset of
    2-element frozensets.  Deterministic for a fixed input.
    """
    if not aux.edges:
        return frozenset(), 0
    g = nx.Graph()
    for u in sorted(aux.nodes, key=_node_key):
        g.add_node(u)
    for (u, v), w in aux.sorted_edges():
        g.add_edge(u, v, weight=w)
    m = nx.max_weight_matching(g, maxcardinality=False, weight="weight")
    matching = frozenset(frozenset(e) for e in m)
    return matching, aux.weight(matching)


def matching_bruteforce(aux: AuxGraph):
    """Exhaustive enumeration over all matchings; the test oracle."""
    edges = aux.sorted_edges()
    best_w = 0
    best = frozenset()

    def rec(i, used, cur_w, cur):
        nonlocal best_w, best
        if cur_w > best_w:
            best_w = cur_w
            best = frozenset(frozenset(e) for e in cur)
        if i == len(edges):
            return
        rec(i + 1, used, cur_w, cur)
        (u, v), w = edges[i]
        if u not in used and v not in used:
            cur.append((u, v))
            rec(i + 1, used | {u, v}, cur_w + w, cur)
            cur.pop()

    rec(0, frozenset(), 0, [])
    return best, best_w
