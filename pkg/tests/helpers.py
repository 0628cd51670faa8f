"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations

from stripmwis.esd import ExtendedStripDecomposition, validate_esd
from stripmwis.graph import WeightedGraph


def naive_find_sttt(G: WeightedGraph, t: int) -> bool:
    """Subset-enumeration oracle: does G contain an induced S_{t,t,t}?

    Checks every (3t+1)-subset directly against the degree/distance
    profile of the subdivided claw; independent of the backtracking
    searcher."""
    need = 3 * t + 1
    if G.n < need:
        return False
    ids = range(G.n)
    for subset in combinations(ids, need):
        sub = G.subgraph([G.label_of(i) for i in subset])
        if _is_sttt(sub, t):
            return True
    return False


def _is_sttt(sub: WeightedGraph, t: int) -> bool:
    degs = sorted(sub.degree(i) for i in range(sub.n))
    if t == 1:
        if degs != [1, 1, 1, 3]:
            return False
    elif degs != [1, 1, 1] + [2] * (3 * (t - 1)) + [3]:
        return False
    center = next(i for i in range(sub.n) if sub.degree(i) == 3)
    # all three leaves must sit at distance exactly t from the center
    dist = {center: 0}
    frontier = [center]
    while frontier:
        nxt = []
        for v in frontier:
            for u in sub.adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    if len(dist) != sub.n:
        return False
    leaves = [i for i in range(sub.n) if sub.degree(i) == 1]
    return all(dist[v] == t for v in leaves)


def random_graph(rng: random.Random, n: int, p: float, wmax: int = 20) -> WeightedGraph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return WeightedGraph(range(n), [rng.randint(0, wmax) for _ in range(n)], edges)


def random_esd_instance(rng: random.Random, max_n: int = 14):
    """A random valid decomposition together with a host graph built to
    satisfy it: classes are assigned first, then all mandatory
    completeness edges plus a random selection of sanctioned edges."""
    nh = rng.randint(1, 4)
    hedges = sorted((x, y) for x, y in combinations(range(nh), 2) if rng.random() < 0.55)
    es = set(hedges)
    tris = [(x, y, z) for x, y in hedges for z in range(y + 1, nh)
            if (x, z) in es and (y, z) in es]
    n = rng.randint(0, max_n)
    labels = list(range(n))
    vsets = {x: set() for x in range(nh)}
    esets = {e: (set(), set(), set()) for e in hedges}
    tsets = {tr: set() for tr in tris}
    slots = ([("v", x) for x in range(nh)] + [("e", e) for e in hedges]
             + [("t", tr) for tr in tris])
    for v in labels:
        kind, anchor = rng.choice(slots)
        if kind == "v":
            vsets[anchor].add(v)
        elif kind == "t":
            tsets[anchor].add(v)
        else:
            full, ea, eb = esets[anchor]
            full.add(v)
            r = rng.random()
            if r < 0.3:
                ea.add(v)
            elif r < 0.6:
                eb.add(v)
            elif r < 0.75:
                ea.add(v)
                eb.add(v)
    D = ExtendedStripDecomposition(range(nh), hedges, vsets, esets, tsets)

    edges = set()

    def add(u, v, p):
        if u != v and rng.random() < p:
            edges.add((min(u, v), max(u, v)))

    for x in range(nh):
        for y, z in combinations(D.pattern_neighbors(x), 2):
            for u in D.eta_end(x, y, x):
                for v in D.eta_end(x, z, x):
                    add(u, v, 1.0)
    for _, _, mem in D.all_classes():
        for u, v in combinations(sorted(mem), 2):
            add(u, v, 0.35)
    for x, y in hedges:
        for end in (x, y):
            for u in D.eta_end(x, y, end):
                for v in D.eta_vertex(end):
                    add(u, v, 0.45)
    for tr in tris:
        x, y, z = tr
        for a, b in ((x, y), (x, z), (y, z)):
            both = D.eta_end(a, b, a) & D.eta_end(a, b, b)
            for u in tsets[tr]:
                for v in both:
                    add(u, v, 0.5)
    G = WeightedGraph(labels, [rng.randint(0, 20) for _ in labels], sorted(edges))
    assert not validate_esd(G, D), "generator produced an invalid decomposition"
    return G, D


def hub_caterpillar(rng: random.Random, n: int, hubs: int = 3,
                    hub_legs: int = 6) -> WeightedGraph:
    """Caterpillar with a few high-degree leg bundles; tree, so biclique
    free, and all legs have length one, so free of S_{2,2,2}."""
    spine = max(6, n // 3)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for h in sorted(rng.sample(range(1, spine - 1), min(hubs, spine - 2))):
        for _ in range(hub_legs):
            if nxt >= n:
                break
            edges.append((h, nxt))
            nxt += 1
    hosts = list(range(spine))
    while nxt < n:
        edges.append((rng.choice(hosts), nxt))
        nxt += 1
    return WeightedGraph(range(n), [rng.randint(1, 100) for _ in range(n)], edges)


def windmill_caterpillar(rng: random.Random, n: int, hubs: int = 3) -> WeightedGraph:
    """Spine with windmill hubs (triangles glued at the hub) plus pendant
    legs.  Triangle blades block every third long leg, so no induced
    S_{2,2,2}; any two vertices share at most one common neighbor, so no
    K_{2,2} subgraph."""
    spine = max(6, n // 4)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for h in sorted(rng.sample(range(1, spine - 1), min(hubs, spine - 2))):
        for _ in range(rng.randint(2, 3)):
            if nxt + 1 >= n:
                break
            edges += [(h, nxt), (h, nxt + 1), (nxt, nxt + 1)]
            nxt += 2
    hosts = list(range(spine))
    while nxt < n:
        edges.append((rng.choice(hosts), nxt))
        nxt += 1
    return WeightedGraph(range(n), [rng.randint(1, 100) for _ in range(n)], edges)


def union_graph(parts) -> WeightedGraph:
    """Disjoint union with relabelled vertices."""
    labels, weights, edges = [], [], []
    offset = 0
    for part in parts:
        remap = {lab: offset + i for i, lab in enumerate(part.labels)}
        labels.extend(remap[lab] for lab in part.labels)
        weights.extend(part.weights)
        for u, v in part.edges_ids():
            edges.append((remap[part.labels[u]], remap[part.labels[v]]))
        offset += part.n
    return WeightedGraph(labels, weights, edges)
