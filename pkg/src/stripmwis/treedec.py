"""Tree decompositions with small adhesions and degree-bounded torsos.

The builder is a validator-gated best effort: it splits bags along
minimum vertex separators of the torso between high-degree vertices
until every torso has at most k vertices of degree above 2k(k-1), or
fails with diagnostics.  Every returned decomposition passes both
`validate_tree_decomposition` and `check_weissauer`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import CapacityError, InputError, InvariantError
from .graph import WeightedGraph


class TreeDecomposition:
    def __init__(self, bags, tree_edges):
        """`bags` maps node id -> label set; `tree_edges` connect node ids."""
        self.bags = {nid: frozenset(b) for nid, b in bags.items()}
        self.nodes = tuple(sorted(self.bags))
        es = set()
        for s, t in tree_edges:
            if s == t or s not in self.bags or t not in self.bags:
                raise InputError(f"bad tree edge ({s}, {t})")
            es.add((min(s, t), max(s, t)))
        self.tree_edges = tuple(sorted(es))
        if len(self.nodes) > 0 and len(self.tree_edges) != len(self.nodes) - 1:
            raise InputError("decomposition tree must have exactly n-1 edges")
        if self.nodes and not self._tree_connected():
            raise InputError("decomposition tree is not connected")

    def _tree_connected(self) -> bool:
        adj = {n: [] for n in self.nodes}
        for s, t in self.tree_edges:
            adj[s].append(t)
            adj[t].append(s)
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.nodes)

    def adhesion(self, s, t) -> frozenset:
        if (min(s, t), max(s, t)) not in self.tree_edges:
            raise InputError(f"({s}, {t}) is not a tree edge")
        return self.bags[s] & self.bags[t]

    def tree_neighbors(self, node):
        return sorted(t if s == node else s
                      for s, t in self.tree_edges if node in (s, t))

    def covered(self) -> frozenset:
        out = set()
        for b in self.bags.values():
            out |= b
        return frozenset(out)

def tree_sides(td: TreeDecomposition, s, t):
    """Correct two-sided split of the tree at edge st."""
    adj = {n: set(td.tree_neighbors(n)) for n in td.nodes}
    seen = {s}
    stack = [s]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if (cur, nb) == (s, t) or (cur, nb) == (t, s):
                continue
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    side_s = seen
    side_t = set(td.nodes) - side_s
    return side_s, side_t


def validate_tree_decomposition(G: WeightedGraph, td: TreeDecomposition) -> list:
    """Edge coverage, connected nonempty per-vertex subtrees, and the
    separation property of every adhesion."""
    report = []
    for b in td.bags.values():
        for v in b:
            if not G.has_label(v):
                report.append(f"bag vertex {v!r} is not in the graph")
    if report:
        return report
    covered = td.covered()
    for v in G.labels:
        if v not in covered:
            report.append(f"vertex {v!r} is in no bag")
    for u, v in G.edges_ids():
        lu, lv = G.label_of(u), G.label_of(v)
        if not any(lu in b and lv in b for b in td.bags.values()):
            report.append(f"edge {lu!r}-{lv!r} is covered by no bag")
    # Connectivity of each vertex's node set.
    adj = {n: td.tree_neighbors(n) for n in td.nodes}
    for v in G.labels:
        holding = [n for n in td.nodes if v in td.bags[n]]
        if not holding:
            continue
        seen = {holding[0]}
        stack = [holding[0]]
        hold = set(holding)
        while stack:
            for nb in adj[stack.pop()]:
                if nb in hold and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(holding):
            report.append(f"bags holding {v!r} are not connected in the tree")
    if report:
        return report
    # Separation: no G-edge may join the two strict sides of a tree edge.
    for s, t in td.tree_edges:
        sigma = td.adhesion(s, t)
        side_s, side_t = tree_sides(td, s, t)
        vs = set().union(*(td.bags[x] for x in side_s)) - sigma
        vt = set().union(*(td.bags[x] for x in side_t)) - sigma
        for u, v in G.edges_ids():
            lu, lv = G.label_of(u), G.label_of(v)
            if (lu in vs and lv in vt) or (lu in vt and lv in vs):
                report.append(
                    f"adhesion of ({s}, {t}) fails to separate {lu!r} from {lv!r}")
    return report


def torso(G: WeightedGraph, td: TreeDecomposition, node) -> WeightedGraph:
    """G[bag] plus a clique on each incident adhesion."""
    bag = td.bags[node]
    H = G.subgraph(bag)
    extra = set()
    for nb in td.tree_neighbors(node):
        sigma = sorted(td.adhesion(node, nb), key=repr)
        for a, b in combinations(sigma, 2):
            if not H.has_edge_labels(a, b):
                extra.add((a, b))
    if not extra:
        return H
    labs = list(H.labels)
    ws = list(H.weights)
    es = [(H.labels[u], H.labels[v]) for u, v in H.edges_ids()]
    return WeightedGraph(labs, ws, es + sorted(extra, key=repr))


def high_degree_threshold(k: int) -> int:
    return 2 * k * (k - 1)


def check_weissauer(G: WeightedGraph, td: TreeDecomposition, k: int) -> list:
    """Adhesions below k and at most k high-degree vertices per torso."""
    report = []
    for s, t in td.tree_edges:
        sigma = td.adhesion(s, t)
        if len(sigma) >= k:
            report.append(f"adhesion of ({s}, {t}) has size {len(sigma)} >= {k}")
    thr = high_degree_threshold(k)
    for node in td.nodes:
        tor = torso(G, td, node)
        high = [v for v in tor.labels if tor.degree(tor.id_of(v)) > thr]
        if len(high) > k:
            report.append(
                f"torso of node {node} has {len(high)} vertices of degree > {thr}")
    return report


@dataclass(frozen=True)
class BuilderBudget:
    max_splits: int = 400


def build_weissauer(G: WeightedGraph, k: int,
                    budget: BuilderBudget | None = None) -> TreeDecomposition:
    """Best-effort construction of a decomposition passing check_weissauer.

    Connected components get their own bags first; a bag whose torso has
    more than k high-degree vertices is split along a minimum torso
    separator (below k) between two high-degree vertices, provided the
    split lowers the high-degree count on both sides.
    """
    if k < 2:
        raise InputError("k must be at least 2")
    budget = budget or BuilderBudget()
    thr = high_degree_threshold(k)

    comps = G.components()
    if not comps:
        comps = [frozenset()]
    bags = {i: set(c) for i, c in enumerate(comps)}
    tree = {(i, i + 1) for i in range(len(comps) - 1)}
    neighbors = {i: {j for e in tree for j in e if i in e and j != i} for i in bags}
    next_id = len(bags)
    splits = 0
    worklist = sorted(bags)

    def torso_graph(node):
        sub = G.subgraph(bags[node])
        g = nx.Graph()
        g.add_nodes_from(sorted(bags[node], key=repr))
        for u, v in sub.edges_ids():
            g.add_edge(sub.label_of(u), sub.label_of(v))
        for nb in sorted(neighbors[node]):
            sigma = sorted(bags[node] & bags[nb], key=repr)
            for a, b in combinations(sigma, 2):
                g.add_edge(a, b)
        return g

    def high_of(g):
        return sorted((v for v in g.nodes if g.degree(v) > thr), key=repr)

    while worklist:
        node = worklist.pop(0)
        g = torso_graph(node)
        high = high_of(g)
        if len(high) <= k:
            continue
        if splits >= budget.max_splits:
            raise CapacityError(
                f"tree decomposition split budget exhausted; unresolved bag of "
                f"size {len(bags[node])} with {len(high)} high-degree vertices")
        split = _find_split(g, high, k, thr, bags, neighbors, node)
        if split is None:
            raise CapacityError(
                "no separator below "
                f"{k} reduces the high-degree count of a bag of size {len(bags[node])} "
                f"with {len(high)} high-degree vertices")
        splits += 1
        w1, w2, side1_nbrs, side2_nbrs = split
        other = next_id
        next_id += 1
        bags[other] = w2
        bags[node] = w1
        neighbors[other] = set(side2_nbrs) | {node}
        for nb in side2_nbrs:
            neighbors[nb].discard(node)
            neighbors[nb].add(other)
        neighbors[node] = set(side1_nbrs) | {other}
        worklist.extend([node, other])

    td = TreeDecomposition(bags, {(a, b) for a in neighbors for b in neighbors[a] if a < b})
    problems = validate_tree_decomposition(G, td) + check_weissauer(G, td, k)
    if problems:
        raise InvariantError("builder produced an invalid decomposition: "
                             + "; ".join(problems))
    return td


def _find_split(g, high, k, thr, bags, neighbors, node):
    """First separator (deterministic order) that splits the torso and
    lowers the high-degree count on both sides."""
    for u, v in combinations(high, 2):
        if g.has_edge(u, v):
            continue
        cut = nx.minimum_node_cut(g, u, v)
        if len(cut) >= k:
            continue
        rest = g.subgraph(set(g.nodes) - cut)
        comp_u = nx.node_connected_component(rest, u)
        w1 = set(comp_u) | set(cut)
        w2 = (set(g.nodes) - set(comp_u))
        side1_nbrs, side2_nbrs = [], []
        ok = True
        for nb in sorted(neighbors[node]):
            sigma = bags[node] & bags[nb]
            if sigma <= w1:
                side1_nbrs.append(nb)
            elif sigma <= w2:
                side2_nbrs.append(nb)
            else:
                ok = False
                break
        if not ok:
            continue
        c1 = _high_count_after(g, w1, cut, thr)
        c2 = _high_count_after(g, w2, cut, thr)
        if c1 < len(high) and c2 < len(high):
            return w1, w2, side1_nbrs, side2_nbrs
    return None


def _high_count_after(g, side, cut, thr):
    sub = nx.Graph(g.subgraph(side))
    for a, b in combinations(sorted(cut, key=repr), 2):
        sub.add_edge(a, b)
    return sum(1 for v in sub.nodes if sub.degree(v) > thr)


def find_k_block(G: WeightedGraph, k: int):
    """Brute-force search for k vertices that are pairwise inseparable by
    fewer than k vertex deletions; None when no such set exists."""
    if k < 1:
        raise InputError("k must be positive")
    if G.n > 25:
        raise CapacityError("k-block search limited to 25 vertices")
    if G.n < k:
        return None
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    for u, v in G.edges_ids():
        g.add_edge(u, v)
    strong = nx.Graph()
    strong.add_nodes_from(range(G.n))
    for u, v in combinations(range(G.n), 2):
        if g.has_edge(u, v):
            strong.add_edge(u, v)  # adjacent pairs cannot be separated
        elif len(nx.minimum_node_cut(g, u, v)) >= k:
            strong.add_edge(u, v)
    for clique in nx.find_cliques(strong):
        if len(clique) >= k:
            return G.labels_of(sorted(clique)[:k])
    return None


# -- text format ---------------------------------------------------------------

def td_to_text(td: TreeDecomposition) -> str:
    lines = [f"t {len(td.nodes)}"]
    for node in td.nodes:
        body = " ".join(str(v) for v in sorted(td.bags[node], key=repr))
        lines.append(f"b {node} : {body}".rstrip())
    for s, t in td.tree_edges:
        lines.append(f"te {s} {t}")
    return "\n".join(lines) + "\n"


def td_from_text(text: str) -> TreeDecomposition:
    from .errors import ParseError

    bags = {}
    edges = []
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "t":
            count = int(parts[1])
        elif parts[0] == "b":
            try:
                node = int(parts[1])
                body = line.split(":", 1)[1]
                bags[node] = {int(v) for v in body.split()}
            except (IndexError, ValueError):
                raise ParseError("bag line must be 'b <node> : <vertices>'", lineno) from None
        elif parts[0] == "te":
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except (IndexError, ValueError):
                raise ParseError("tree edge must be 'te <s> <t>'", lineno) from None
        else:
            raise ParseError(f"unknown line kind {parts[0]!r}", lineno)
    if count is None:
        raise ParseError("missing 't' header")
    if count != len(bags):
        raise ParseError(f"expected {count} bags, found {len(bags)}")
    try:
        return TreeDecomposition(bags, edges)
    except InputError as exc:
        raise ParseError(str(exc)) from None
