"""Recursive border solver for inputs with no large biclique subgraph.

Each non-leaf call builds a tree decomposition with small adhesions and
degree-bounded torsos, picks a bag that is a sink under the orientation
of tree edges toward the heavier side of the balance set U, branches on
the independent subsets J of the bag's few high-degree vertices Q, and
for each branch removes Q and N(J), decomposes the remainder around a
short-path family, recurses separately on the components touched by the
removal and on the particles of the restricted strip decomposition, and
folds everything into the parent profile over independent subsets of
(T cap V(G^J)) union T^Y union Y^J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .border import BorderProfile, brute_force_border, combine_esd
from .bnb import iter_independent_sets
from .decompose import DecomposeBudget, decompose, validate_outcome
from .errors import CapacityError, InputError, InvariantError
from .esd import check_pattern_degree, occurrence_bound, particles, restrict_esd
from .graph import WeightedGraph
from .oracle import OracleBudget
from .patterns import SubdividedClawWitness
from .solver_degree import compute_ell
from .trace import BranchRecord, RecursionTrace, TraceRecord
from .treedec import (BuilderBudget, TreeDecomposition, build_weissauer,
                      high_degree_threshold, tree_sides)


@dataclass
class BicliqueSolverConfig:
    t: int = 2
    k: int = 10
    ell_scale: object = 1
    # Not part of the published recursion: at desk scale 32*k^5*ell always
    # exceeds the instance size, so an explicit cap is the only way to make
    # the solver recurse at all.  Terminal invariants stay at 32*k^5*ell.
    leaf_cap_override: int | None = None
    trace: bool = False
    with_witnesses: bool = False
    decompose_budget: DecomposeBudget = field(default_factory=DecomposeBudget)
    oracle_budget: OracleBudget = field(default_factory=OracleBudget)
    builder_budget: BuilderBudget = field(default_factory=BuilderBudget)

    def __post_init__(self):
        if self.k < 2:
            raise InputError("k must be at least 2")


@dataclass
class BicliqueSolveResult:
    profile: BorderProfile | None = None
    witness: SubdividedClawWitness | None = None
    trace: RecursionTrace | None = None

    @property
    def found_witness(self) -> bool:
        return self.witness is not None


@dataclass
class BagContext:
    """The chosen sink bag with its component structure."""

    node: int
    bag: frozenset
    components: list          # (component labels, neighborhood labels) pairs
    gb_degree: dict           # degree in G^B (bag graph + component cliques)
    q: tuple                  # high-degree vertices, sorted


class _Witness(Exception):
    def __init__(self, witness):
        self.witness = witness


def choose_sink_node(Gp: WeightedGraph, td: TreeDecomposition, U, k: int) -> BagContext:
    """Orient every tree edge toward the side holding more of U (ties to
    the smaller node id) and return the context of an outdegree-0 node."""
    uset = frozenset(U)
    outdeg = {n: 0 for n in td.nodes}
    for s, t in td.tree_edges:
        sigma = td.adhesion(s, t)
        side_s, side_t = tree_sides(td, s, t)
        vs = set().union(*(td.bags[x] for x in side_s)) - sigma
        vt = set().union(*(td.bags[x] for x in side_t)) - sigma
        ws, wt = len(vs & uset), len(vt & uset)
        if ws > wt or (ws == wt and s < t):
            outdeg[t] += 1
        else:
            outdeg[s] += 1
    sinks = [n for n in td.nodes if outdeg[n] == 0]
    if not sinks:
        raise InvariantError("tree orientation produced no sink")
    node = min(sinks)
    bag = td.bags[node]
    comps = [(c, Gp.open_neighborhood(c))
             for c in Gp.subgraph(Gp.label_set - bag).components()]
    for c, nc in comps:
        if len(nc) >= k:
            raise InvariantError(
                f"component neighborhood of size {len(nc)} >= k={k}; "
                "tree decomposition violates its adhesion contract")
        if 2 * len(c & uset) > len(uset):
            raise InvariantError("sink bag left a component holding more than half of U")
    gb_adj = {v: set(Gp.neighbors_labels(v) & bag) for v in bag}
    for c, nc in comps:
        for a in nc:
            for b in nc:
                if a != b:
                    gb_adj[a].add(b)
    degrees = {v: len(s) for v, s in gb_adj.items()}
    thr = high_degree_threshold(k)
    q = tuple(sorted((v for v, d in degrees.items() if d > thr), key=repr))
    if len(q) > k:
        raise InvariantError(f"{len(q)} high-degree bag vertices exceed k={k}")
    return BagContext(node=node, bag=bag, components=comps, gb_degree=degrees, q=q)


def classify_components(Gp: WeightedGraph, GJ: WeightedGraph, ctx: BagContext,
                        X, k: int):
    """Dirty and touched components with the interface sets Y^J and Z^J;
    the three growth bounds are asserted."""
    nxj = GJ.closed_neighborhood(X)
    vj = GJ.label_set
    dirty = []
    for idx, (c, nc) in enumerate(ctx.components):
        if nxj & (c | nc):
            dirty.append(idx)
    y = frozenset(nxj & ctx.bag) | frozenset(
        v for idx in dirty for v in ctx.components[idx][1] & vj)
    touched = list(dirty)
    for idx, (c, nc) in enumerate(ctx.components):
        if idx not in dirty and nc & y:
            touched.append(idx)
    touched.sort()
    z = frozenset(GJ.closed_neighborhood(y) & ctx.bag) | frozenset(
        v for idx in touched for v in ctx.components[idx][1] & vj)

    xs = len(X)
    bound1 = (2 * k * (k - 1) + 1) * xs
    if len(nxj & ctx.bag) > bound1:
        raise InvariantError(f"|N[X] cap B| = {len(nxj & ctx.bag)} exceeds {bound1}")
    if len(y) > 4 * k ** 4 * xs:
        raise InvariantError(f"|Y| = {len(y)} exceeds {4 * k ** 4 * xs}")
    if len(z) > 8 * k ** 5 * xs:
        raise InvariantError(f"|Z| = {len(z)} exceeds {8 * k ** 5 * xs}")
    return dirty, touched, y, z


def solve_biclique(G: WeightedGraph, T, cfg: BicliqueSolverConfig | None = None) -> BicliqueSolveResult:
    cfg = cfg or BicliqueSolverConfig()
    solver = _BicliqueSolver(G, cfg)
    try:
        profile = solver.solve(G, frozenset(T), depth=0)
    except _Witness as w:
        return BicliqueSolveResult(witness=w.witness, trace=solver.trace)
    return BicliqueSolveResult(profile=profile, trace=solver.trace)


def mwis_biclique(G: WeightedGraph, cfg: BicliqueSolverConfig | None = None):
    result = solve_biclique(G, frozenset(), cfg)
    if result.found_witness:
        return result
    value = result.profile.table[0]
    witness = result.profile.witnesses[0] if result.profile.witnesses else None
    if witness is not None:
        if not G.is_independent(witness) or G.total_weight(witness) != value:
            raise InvariantError("solver witness failed re-verification")
    return value, witness, result.trace


class _BicliqueSolver:
    def __init__(self, G: WeightedGraph, cfg: BicliqueSolverConfig):
        self.cfg = cfg
        self.k = cfg.k
        self.ell = compute_ell(G.n, cfg.t, cfg.ell_scale)
        self.terminal_cap = 32 * cfg.k ** 5 * self.ell
        self.leaf_cap = cfg.leaf_cap_override if cfg.leaf_cap_override is not None \
            else 32 * cfg.k ** 5 * self.ell
        self.u_rule_cap = (3 * self.leaf_cap) // 4
        self.depth_cap = max(1, 2 * math.ceil(math.log2(max(G.n, 2))))
        self.trace = RecursionTrace()

    def solve(self, Gp: WeightedGraph, T: frozenset, depth: int) -> BorderProfile:
        if len(T) > self.terminal_cap:
            raise InvariantError(
                f"terminal invariant broken: |T|={len(T)} > {self.terminal_cap}")
        if depth > self.depth_cap:
            raise InvariantError(f"recursion depth {depth} exceeds {self.depth_cap}")

        # A call without (or with a single) nonterminal vertex is a leaf.
        if Gp.n <= self.leaf_cap or len(Gp.label_set - T) <= 1:
            self.trace.add(TraceRecord(depth, Gp.n, len(T), "-", 0, 0, True))
            return brute_force_border(
                Gp, T,
                max_vertices=self.cfg.oracle_budget.max_vertices,
                max_terminals=self.cfg.oracle_budget.max_terminals,
                node_cap=self.cfg.oracle_budget.max_nodes,
                with_witnesses=self.cfg.with_witnesses)

        td = build_weissauer(Gp, self.k, self.cfg.builder_budget)
        if len(T) <= self.u_rule_cap:
            U, ukind = Gp.label_set - T, "V"
        else:
            U, ukind = T, "T"
        ctx = choose_sink_node(Gp, td, U, self.k)

        result = BorderProfile(
            tuple(Gp.label_of(i) for i in sorted(Gp.ids_of(T))),
            with_witnesses=self.cfg.with_witnesses)

        qlabels = list(ctx.q)
        conflicts = []
        for v in qlabels:
            nb = Gp.neighbors_labels(v)
            c = 0
            for j, u in enumerate(qlabels):
                if u in nb:
                    c |= 1 << j
            conflicts.append(c)
        first_branch = True
        for jmask in iter_independent_sets(conflicts):
            J = frozenset(qlabels[i] for i in range(len(qlabels)) if (jmask >> i) & 1)
            self._branch(Gp, T, U, ukind, ctx, J, jmask, depth, result, first_branch)
            first_branch = False
        self._verify_witnesses(Gp, T, result)
        return result

    def _branch(self, Gp, T, U, ukind, ctx, J, jmask, depth, result, record_call):
        removed = set(ctx.q) | set(Gp.open_neighborhood(J))
        vj = Gp.label_set - removed
        GJ = Gp.subgraph(vj)
        UJ = frozenset(U) & vj

        outcome = decompose(GJ, UJ, self.cfg.t, self.cfg.decompose_budget)
        if outcome.found_witness:
            raise _Witness(outcome.witness)
        report = validate_outcome(GJ, UJ, self.cfg.t, outcome)
        if report:
            raise InvariantError("decomposition failed validation: " + "; ".join(report))
        X = outcome.removed_set()
        D = outcome.esd
        self._structure_checks(D)
        if record_call:
            self.trace.add(TraceRecord(depth, Gp.n, len(T), ukind,
                                       len(X), len(particles(D)), False))

        dirty, touched, y, z = classify_components(Gp, GJ, ctx, X, self.k)
        self.trace.add(BranchRecord(jmask, len(dirty), len(touched), len(y), len(z)))

        # Recurse on the touched components with their full interface as terminals.
        comp_profiles = {}
        for idx in touched:
            c, nc = ctx.components[idx]
            gc_labels = (c | nc) & vj
            tc = ((T & c) | nc) & vj
            if not (nc & vj) <= tc:
                raise InvariantError("component interface escaped its terminal set")
            if len(T) <= self.u_rule_cap and len(tc) > len(T) + self.k:
                raise InvariantError(
                    f"|T_C| = {len(tc)} exceeds |T| + k = {len(T) + self.k}")
            gc = Gp.subgraph(gc_labels)
            comp_profiles[idx] = self.solve(gc, tc, depth + 1)

        # The rest of G^J lives inside the strip decomposition.
        gy_labels = vj - y - frozenset(v for idx in touched
                                       for v in ctx.components[idx][0] & vj)
        nxj = GJ.closed_neighborhood(X)
        if gy_labels & nxj:
            raise InvariantError("removed neighborhood leaked into the strip remainder")
        GY = Gp.subgraph(gy_labels)
        DY = restrict_esd(D, GY)
        TY = (T | z) & gy_labels
        for idx in touched:
            nc = ctx.components[idx][1]
            if not (nc & gy_labels) <= TY:
                raise InvariantError("touched interface missing from the strip terminals")

        profs = {}
        for p in particles(DY):
            sub = GY.subgraph(p.members)
            profs[p] = self.solve(sub, TY & p.members, depth + 1)
        fy = combine_esd(GY, TY, DY, profs, with_witnesses=self.cfg.with_witnesses)

        self._fold(Gp, T, J, ctx, comp_profiles, touched, y, fy, TY, vj, result)

    def _structure_checks(self, D):
        # Without K_{2t} subgraphs the pattern degree stays below 2t, and
        # each vertex sits in at most max(4, 2d+1) particles.
        if not check_pattern_degree(None, D, 2 * self.cfg.t):
            raise InvariantError(
                f"pattern degree {D.pattern_max_degree()} exceeds {2 * self.cfg.t - 1}")
        d = D.pattern_max_degree()
        occ = occurrence_bound(D)
        if occ > max(4, 2 * d + 1):
            raise InvariantError(
                f"a vertex appears in {occ} particles, cap {max(4, 2 * d + 1)}")

    def _fold(self, Gp, T, J, ctx, comp_profiles, touched, y, fy, TY, vj, result):
        """Maximize, over independent I_T in (T cap V(G^J)) u T^Y u Y^J,
        w(J) + w(I_T cap Y^J) + f_Y(I_T cap T^Y)
        + sum over touched C of (f_C(N[C] cap I_T) - w(I_T cap N(C)))
        into the cell (I_T u J) cap T."""
        universe_labels = sorted(Gp.ids_of((T & vj) | TY | y))
        labels = [Gp.label_of(i) for i in universe_labels]
        pos = {lab: i for i, lab in enumerate(labels)}
        conflicts = []
        for i, vid in enumerate(universe_labels):
            c = 0
            for u in Gp.adj[vid]:
                j = pos.get(Gp.label_of(u))
                if j is not None:
                    c |= 1 << j
            conflicts.append(c)

        wts = [Gp.weights[v] for v in universe_labels]
        ty_bit = [fy.mask_of([lab]) if lab in TY else None for lab in labels]
        in_y = [lab in y for lab in labels]
        t_bit = [result.mask_of([lab]) if lab in T else 0 for lab in labels]
        jcell = result.mask_of(J & T)
        wj = Gp.total_weight(J)

        per_c = []
        for idx in touched:
            c, nc = ctx.components[idx]
            prof = comp_profiles[idx]
            closed = (c | nc)
            cbits = [None] * len(labels)
            nbits = [False] * len(labels)
            for i, lab in enumerate(labels):
                if lab in closed:
                    cbits[i] = prof.mask_of([lab])
                nbits[i] = lab in nc
            per_c.append((prof, cbits, nbits))

        for mask in iter_independent_sets(conflicts):
            fymask = 0
            ywt = 0
            cell = jcell
            cmasks = [0] * len(per_c)
            nwt = [0] * len(per_c)
            m = mask
            while m:
                b = m & -m
                i = b.bit_length() - 1
                if in_y[i]:
                    ywt += wts[i]
                elif ty_bit[i] is not None:
                    fymask |= ty_bit[i]
                cell |= t_bit[i]
                for ci, (prof, cbits, nbits) in enumerate(per_c):
                    if cbits[i] is not None:
                        cmasks[ci] |= cbits[i]
                    if nbits[i]:
                        nwt[ci] += wts[i]
                m ^= b
            base = fy.table[fymask]
            if base is None:
                raise InvariantError("independent trace hit a -inf strip cell")
            value = wj + ywt + base
            for ci, (prof, _, _) in enumerate(per_c):
                sub = prof.table[cmasks[ci]]
                if sub is None:
                    raise InvariantError("independent trace hit a -inf component cell")
                value += sub - nwt[ci]
            wit = None
            if self.cfg.with_witnesses:
                wit = set(J)
                wit |= {labels[i] for i in range(len(labels))
                        if (mask >> i) & 1 and in_y[i]}
                wit |= fy.witnesses[fymask]
                for ci, (prof, _, _) in enumerate(per_c):
                    cwit = prof.witnesses[cmasks[ci]]
                    wit |= cwit & ctx.components[touched[ci]][0]
                wit = frozenset(wit)
            result.update(cell, value, wit)

    def _verify_witnesses(self, Gp, T, result):
        if not self.cfg.with_witnesses:
            return
        for mask, val in result.cells():
            if val is None:
                continue
            wit = result.witnesses[mask]
            if wit is None:
                raise InvariantError("finite cell lacks a witness")
            if not Gp.is_independent(wit) or Gp.total_weight(wit) != val:
                raise InvariantError("cell witness failed re-verification")
            if wit & set(result.terminals) != result.labels_of(mask):
                raise InvariantError("cell witness disagrees with its trace")
