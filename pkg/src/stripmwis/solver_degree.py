"""Recursive border solver for bounded-degree inputs.

Each call either brute-forces a small induced subgraph or removes the
closed neighborhood of a short-path family X, recurses on the particles
of the balanced strip decomposition of the remainder, combines the
particle profiles through the matching step, and folds the removed part
back in by enumerating independent subsets of T* union N[X].

The alternation between balancing on all vertices and balancing on the
terminal set keeps the terminal count below 4 * Delta^2 * ell at every
call; the scale knob on ell exists so that desk-size instances exercise
the recursion instead of collapsing into one brute-force leaf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .border import BorderProfile, brute_force_border, combine_esd
from .bnb import iter_independent_sets
from .decompose import DecomposeBudget, decompose, validate_outcome
from .errors import CapacityError, InputError, InvariantError
from .esd import check_pattern_degree, occurrence_bound, particles
from .graph import WeightedGraph
from .oracle import OracleBudget
from .patterns import SubdividedClawWitness
from .trace import RecursionTrace, TraceRecord


def compute_ell(n: int, t: int, ell_scale=1) -> int:
    """ceil(scale * ceil(11*log2(n) + 6) * (t + 2)), at least 1."""
    if n < 1:
        n = 1
    base = math.ceil(11 * math.log2(n) + 6) * (t + 2)
    scale = Fraction(*ell_scale.as_integer_ratio()) if isinstance(ell_scale, float) \
        else Fraction(ell_scale)
    if scale <= 0:
        raise InputError("ell_scale must be positive")
    return max(1, math.ceil(scale * base))


@dataclass
class DegreeSolverConfig:
    t: int = 2
    ell_scale: object = 1
    leaf_cap_override: int | None = None
    trace: bool = False
    with_witnesses: bool = False
    decompose_budget: DecomposeBudget = field(default_factory=DecomposeBudget)
    oracle_budget: OracleBudget = field(default_factory=OracleBudget)


@dataclass
class DegreeSolveResult:
    profile: BorderProfile | None = None
    witness: SubdividedClawWitness | None = None
    trace: RecursionTrace | None = None

    @property
    def found_witness(self) -> bool:
        return self.witness is not None


class _Witness(Exception):
    """Internal control flow: an induced subdivided claw surfaced."""

    def __init__(self, witness):
        self.witness = witness


def solve_degree(G: WeightedGraph, T, cfg: DegreeSolverConfig | None = None) -> DegreeSolveResult:
    cfg = cfg or DegreeSolverConfig()
    solver = _DegreeSolver(G, cfg)
    try:
        profile = solver.solve(G, frozenset(T), depth=0)
    except _Witness as w:
        return DegreeSolveResult(witness=w.witness, trace=solver.trace)
    return DegreeSolveResult(profile=profile, trace=solver.trace)


def mwis(G: WeightedGraph, cfg: DegreeSolverConfig | None = None):
    """Maximum independent-set weight of G (plus a verified witness when
    the config asks for witnesses); a witness result means an induced
    subdivided claw was found instead."""
    result = solve_degree(G, frozenset(), cfg)
    if result.found_witness:
        return result
    value = result.profile.table[0]
    witness = result.profile.witnesses[0] if result.profile.witnesses else None
    if witness is not None:
        if not G.is_independent(witness) or G.total_weight(witness) != value:
            raise InvariantError("solver witness failed re-verification")
    return value, witness, result.trace


class _DegreeSolver:
    def __init__(self, G: WeightedGraph, cfg: DegreeSolverConfig):
        self.cfg = cfg
        self.root_n = G.n
        self.delta = max(1, G.max_degree())
        self.ell = compute_ell(G.n, cfg.t, cfg.ell_scale)
        self.terminal_cap = 4 * self.delta ** 2 * self.ell
        self.u_rule_cap = 3 * self.delta ** 2 * self.ell
        self.leaf_cap = cfg.leaf_cap_override if cfg.leaf_cap_override is not None \
            else 4 * self.delta ** 2 * self.ell
        self.depth_cap = max(1, 2 * math.ceil(math.log2(max(G.n, 2))))
        self.trace = RecursionTrace()

    def solve(self, Gp: WeightedGraph, T: frozenset, depth: int) -> BorderProfile:
        if len(T) > self.terminal_cap:
            raise InvariantError(
                f"terminal invariant broken: |T|={len(T)} > {self.terminal_cap}")
        if depth > self.depth_cap:
            raise InvariantError(f"recursion depth {depth} exceeds {self.depth_cap}")

        if Gp.n <= self.leaf_cap:
            self._record(depth, Gp.n, len(T), "-", 0, 0, leaf=True)
            return brute_force_border(
                Gp, T,
                max_vertices=self.cfg.oracle_budget.max_vertices,
                max_terminals=self.cfg.oracle_budget.max_terminals,
                node_cap=self.cfg.oracle_budget.max_nodes,
                with_witnesses=self.cfg.with_witnesses)

        if len(T) <= self.u_rule_cap:
            U, ukind = Gp.label_set, "V"
        else:
            U, ukind = T, "T"
        outcome = decompose(Gp, U, self.cfg.t, self.cfg.decompose_budget)
        if outcome.found_witness:
            raise _Witness(outcome.witness)
        report = validate_outcome(Gp, U, self.cfg.t, outcome)
        if report:
            raise InvariantError("decomposition failed validation: " + "; ".join(report))

        X = outcome.removed_set()
        closed = Gp.closed_neighborhood(X)
        frontier = Gp.open_neighborhood(closed)
        rest_labels = Gp.label_set - closed
        Gstar = Gp.subgraph(rest_labels)
        Tstar = (T & rest_labels) | frontier
        # barrier: the removed closed neighborhood may only touch terminals
        if not frontier <= Tstar or frontier & closed:
            raise InvariantError("removed neighborhood touches a nonterminal remainder vertex")

        D = outcome.esd
        self._structure_checks(Gp, Gstar, D)

        parts = particles(D)
        self._record(depth, Gp.n, len(T), ukind, len(X), len(parts), leaf=False)
        profiles = {}
        for p in parts:
            sub = Gstar.subgraph(p.members)
            profiles[p] = self.solve(sub, Tstar & p.members, depth + 1)
        fstar = combine_esd(Gstar, Tstar, D, profiles,
                            with_witnesses=self.cfg.with_witnesses)
        return self._fold(Gp, T, Tstar, closed, fstar)

    def _structure_checks(self, Gp, Gstar, D):
        # A rigid decomposition of a K_q-free graph has pattern degree < q,
        # and no vertex may appear in more than max(4, 2d+1) particles.
        clique_bound = Gstar.max_degree() + 2
        if not check_pattern_degree(Gstar, D, clique_bound):
            raise InvariantError(
                f"pattern degree {D.pattern_max_degree()} exceeds {clique_bound - 1}")
        d = D.pattern_max_degree()
        occ = occurrence_bound(D)
        if occ > max(4, 2 * d + 1):
            raise InvariantError(f"a vertex appears in {occ} particles, cap {max(4, 2 * d + 1)}")
        fanout = sum(len(p.members) for p in particles(D))
        cap = (2 * self.delta + 3) * Gp.n
        if fanout > cap:
            raise InvariantError(f"particle fan-out {fanout} exceeds {cap}")

    def _fold(self, Gp, T, Tstar, closed, fstar: BorderProfile) -> BorderProfile:
        """Fold the removed closed neighborhood back in: enumerate the
        independent subsets of T* union N[X] and maximize
        w(I \\ T*) + f*(I cap T*) into the cell I cap T."""
        result = BorderProfile(tuple(Gp.label_of(i) for i in sorted(Gp.ids_of(T))),
                               with_witnesses=self.cfg.with_witnesses)
        universe = sorted(Gp.ids_of(Tstar | closed))
        pos_of = {v: i for i, v in enumerate(universe)}
        conflicts = []
        for v in universe:
            c = 0
            for u in Gp.adj[v]:
                j = pos_of.get(u)
                if j is not None:
                    c |= 1 << j
            conflicts.append(c)
        starset = frozenset(Tstar)
        in_star = [Gp.label_of(v) in starset for v in universe]
        star_bit = []
        for v in universe:
            lab = Gp.label_of(v)
            star_bit.append(fstar.mask_of([lab]) if lab in starset else 0)
        t_bit = [result.mask_of([Gp.label_of(v)]) if Gp.label_of(v) in T else 0
                 for v in universe]
        wts = [Gp.weights[v] for v in universe]

        for mask in iter_independent_sets(conflicts):
            smask = 0
            cell = 0
            outside_w = 0
            outside = []
            m = mask
            while m:
                b = m & -m
                i = b.bit_length() - 1
                if in_star[i]:
                    smask |= star_bit[i]
                else:
                    outside_w += wts[i]
                    outside.append(universe[i])
                cell |= t_bit[i]
                m ^= b
            base = fstar.table[smask]
            if base is None:
                raise InvariantError("independent trace hit a -inf combined cell")
            wit = None
            if self.cfg.with_witnesses:
                inner = fstar.witnesses[smask]
                wit = frozenset(inner | {Gp.label_of(v) for v in outside})
            result.update(cell, base + outside_w, wit)
        if self.cfg.with_witnesses:
            tset = set(result.terminals)
            for mask, val in result.cells():
                if val is None:
                    continue
                wit = result.witnesses[mask]
                if (wit is None or not Gp.is_independent(wit)
                        or Gp.total_weight(wit) != val
                        or wit & tset != result.labels_of(mask)):
                    raise InvariantError("folded cell witness failed re-verification")
        return result

    def _record(self, depth, n, tsize, ukind, xsize, pcount, leaf):
        self.trace.add(TraceRecord(depth, n, tsize, ukind, xsize, pcount, leaf))
