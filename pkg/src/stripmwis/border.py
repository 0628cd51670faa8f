"""Border MWIS: profiles over terminal subsets and the combination step.

A profile for (G, w, T) stores, for every subset S of the terminals T,
the maximum weight of an independent set I with I cap T = S, or the
-infinity sentinel (None) when S is not independent.  Profiles of the
particles of an extended strip decomposition combine into the profile of
the whole graph through a maximum-weight matching in an auxiliary graph
built per terminal subset.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bnb
from .errors import CapacityError, ContractViolation, InputError, InvariantError
from .esd import (EDGE_INTERIOR, FULL_EDGE, HALF_EDGE, TRIANGLE, VERTEX,
                  ExtendedStripDecomposition, Particle, particles)
from .graph import WeightedGraph
from .matching import AuxGraph, max_weight_matching

#: Hard cap on the number of terminals a dense profile may carry.
MAX_PROFILE_TERMINALS = 26


class BorderProfile:
    """Dense table from terminal subsets (bitmask over an ordered terminal
    list) to weights; None is the -infinity sentinel.  Witness sets are
    carried optionally."""

    __slots__ = ("terminals", "table", "witnesses", "_bit")

    def __init__(self, terminals, with_witnesses=False):
        self.terminals = tuple(terminals)
        if len(self.terminals) > MAX_PROFILE_TERMINALS:
            raise CapacityError(
                f"profile over {len(self.terminals)} terminals exceeds the "
                f"cap of {MAX_PROFILE_TERMINALS}")
        self._bit = {t: i for i, t in enumerate(self.terminals)}
        if len(self._bit) != len(self.terminals):
            raise InputError("duplicate terminals")
        self.table = [None] * (1 << len(self.terminals))
        self.witnesses = [None] * len(self.table) if with_witnesses else None

    def mask_of(self, labels) -> int:
        m = 0
        for l in labels:
            try:
                m |= 1 << self._bit[l]
            except KeyError:
                raise InputError(f"{l!r} is not a terminal of this profile") from None
        return m

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.terminals[i] for i in range(len(self.terminals))
                         if (mask >> i) & 1)

    def value(self, labels):
        return self.table[self.mask_of(labels)]

    def witness(self, labels):
        if self.witnesses is None:
            return None
        return self.witnesses[self.mask_of(labels)]

    def update(self, mask: int, weight: int, witness=None):
        """Keep the cell maximum; first writer wins ties."""
        cur = self.table[mask]
        if cur is None or weight > cur:
            self.table[mask] = weight
            if self.witnesses is not None:
                self.witnesses[mask] = witness

    def cells(self):
        return enumerate(self.table)

    def same_table(self, other: "BorderProfile") -> bool:
        if set(self.terminals) != set(other.terminals):
            return False
        return all(v == other.table[other.mask_of(self.labels_of(m))]
                   for m, v in self.cells())

    def sanity_report(self, G: WeightedGraph) -> list:
        """f(S) = -inf exactly for non-independent S; f(S) >= w(S) otherwise."""
        out = []
        for mask, val in self.cells():
            labels = self.labels_of(mask)
            indep = G.is_independent(labels)
            if indep and (val is None or val < G.total_weight(labels)):
                out.append(f"cell {mask:b}: independent subset valued {val}")
            if not indep and val is not None:
                out.append(f"cell {mask:b}: non-independent subset valued {val}")
        return out

    def dump(self) -> str:
        lines = [f"{mask} {'-inf' if val is None else val}" for mask, val in self.cells()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, terminals, text: str) -> "BorderProfile":
        prof = cls(terminals)
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            mask_s, val_s = line.split()
            mask = int(mask_s)
            if not 0 <= mask < len(prof.table):
                raise InputError(f"profile mask {mask} out of range")
            if val_s != "-inf":
                prof.table[mask] = int(val_s)
        return prof


def _ordered_terminals(G: WeightedGraph, T) -> tuple:
    return tuple(G.label_of(i) for i in sorted(G.ids_of(T)))


def brute_force_border(G: WeightedGraph, T, max_vertices=40, max_terminals=20,
                       node_cap=None, with_witnesses=False) -> BorderProfile:
    """Exact profile by exhaustive search; the global oracle and leaf step.

    Enumerates independent terminal subsets and solves the residual MWIS
    for each by branch and bound; non-independent subsets keep -infinity.
    """
    terminals = _ordered_terminals(G, T)
    if G.n > max_vertices:
        raise CapacityError(f"brute-force border limited to {max_vertices} vertices")
    if len(terminals) > max_terminals:
        raise CapacityError(f"brute-force border limited to {max_terminals} terminals")
    prof = BorderProfile(terminals, with_witnesses=with_witnesses)
    adjm = G.adj_masks
    weights = G.weights
    tids = [G.id_of(t) for t in terminals]
    tmask = 0
    for i in tids:
        tmask |= 1 << i
    rest = ((1 << G.n) - 1) & ~tmask

    def rec(i, chosen, nbhd, submask, wsum):
        if i == len(tids):
            alive = rest & ~nbhd
            best_w, best_m = bnb.max_weight_set(adjm, weights, alive, node_cap)
            wit = G.labels_of_mask(chosen | best_m) if with_witnesses else None
            prof.update(submask, wsum + best_w, wit)
            return
        rec(i + 1, chosen, nbhd, submask, wsum)
        v = tids[i]
        b = 1 << v
        if not (nbhd & b):
            rec(i + 1, chosen | b, nbhd | adjm[v], submask | (1 << i), wsum + weights[v])

    rec(0, 0, 0, 0, 0)
    return prof


def _pv(x):
    return ("pv", x)


def _slack(e):
    return ("slack", e)


@dataclass
class CombinationPlan:
    """Everything needed to evaluate and reconstruct one terminal subset:
    the forced pattern vertices with their enforcers, the base particle
    family with its weight, and the auxiliary matching graph."""

    trace: frozenset
    forced: dict
    base_particles: set
    base_weight: int
    aux: AuxGraph
    terminal_set: frozenset
    particle_values: dict = field(repr=False, default_factory=dict)
    particle_witnesses: dict | None = field(repr=False, default=None)
    host: WeightedGraph = field(repr=False, default=None)
    decomposition: ExtendedStripDecomposition = field(repr=False, default=None)


def _particle_key(p: Particle):
    return (p.kind, p.anchor)


def build_combination_plan(G: WeightedGraph, D: ExtendedStripDecomposition,
                           trace, profile_of, witness_of=None,
                           terminal_set=None) -> CombinationPlan:
    """Construct the particle family and the weighted auxiliary graph for
    one independent terminal subset `trace`.

    `profile_of(particle)` must return the particle's profile value at
    trace cap particle; `witness_of`, when given, returns a witness set
    for that cell.
    """
    trace = frozenset(trace)
    parts = particles(D)
    values = {}
    wits = None if witness_of is None else {}
    for p in parts:
        val = profile_of(p)
        if val is None:
            raise InvariantError(
                f"particle {p.kind}{p.anchor} has -inf value for an independent trace")
        values[_particle_key(p)] = val
        if wits is not None:
            wits[_particle_key(p)] = witness_of(p)

    # A pattern vertex is forced when the trace meets one of its interface
    # end-sets; independence makes the meeting edge (the enforcer) unique.
    forced = {}
    for x in D.pattern_vertices:
        for y in D.pattern_neighbors(x):
            if trace & D.eta_end(x, y, x):
                e = (min(x, y), max(x, y))
                if x in forced and forced[x] != e:
                    raise InvariantError(
                        f"pattern vertex {x} has two enforcers; trace not independent?")
                forced[x] = e

    chosen = set()
    aux = AuxGraph()

    def a(kind, anchor):
        return values[(kind, anchor)]

    for x in D.pattern_vertices:
        if x not in forced:
            chosen.add((VERTEX, (x,)))
    for tr in D.triangles():
        x, y, z = tr
        sides = ((x, y), (x, z), (y, z))
        if not any(forced.get(u) == e and forced.get(v) == e for e in sides for (u, v) in (e,)):
            chosen.add((TRIANGLE, tr))

    for e in D.pattern_edges:
        x, y = e
        tri_sum = sum(a(TRIANGLE, tr) for tr in D.triangles() if x in tr and y in tr)
        fx, fy = x in forced, y in forced
        te = _slack(e)
        if not fx and not fy:
            aux.add_edge(te, _pv(x), a(HALF_EDGE, (e, x)) - a(EDGE_INTERIOR, e) - a(VERTEX, (x,)))
            aux.add_edge(te, _pv(y), a(HALF_EDGE, (e, y)) - a(EDGE_INTERIOR, e) - a(VERTEX, (y,)))
            aux.add_edge(_pv(x), _pv(y), a(FULL_EDGE, e) - a(EDGE_INTERIOR, e)
                         - a(VERTEX, (x,)) - a(VERTEX, (y,)) - tri_sum)
            chosen.add((EDGE_INTERIOR, e))
        elif fx != fy:
            f, u = (x, y) if fx else (y, x)
            if forced[f] == e:
                aux.add_edge(_pv(x), _pv(y), a(FULL_EDGE, e) - a(HALF_EDGE, (e, f))
                             - a(VERTEX, (u,)) - tri_sum)
                chosen.add((HALF_EDGE, (e, f)))
            else:
                aux.add_edge(te, _pv(u), a(HALF_EDGE, (e, u)) - a(EDGE_INTERIOR, e)
                             - a(VERTEX, (u,)))
                chosen.add((EDGE_INTERIOR, e))
        else:
            ex, ey = forced[x] == e, forced[y] == e
            if not ex and not ey:
                chosen.add((EDGE_INTERIOR, e))
            elif ex and not ey:
                chosen.add((HALF_EDGE, (e, x)))
            elif ey and not ex:
                chosen.add((HALF_EDGE, (e, y)))
            else:
                chosen.add((FULL_EDGE, e))

    base_weight = sum(values[k] for k in chosen)
    return CombinationPlan(
        trace=trace, forced=forced, base_particles=chosen, base_weight=base_weight,
        aux=aux, terminal_set=frozenset(terminal_set) if terminal_set is not None else trace,
        particle_values=values, particle_witnesses=wits,
        host=G, decomposition=D)


def reconstruct_witness(plan: CombinationPlan, matching) -> frozenset:
    """Turn a matching of the auxiliary graph into an independent set.

    Applies the insert/remove rules edge by edge to the base particle
    family and unions the particle witnesses; the result is re-verified:
    independent, meeting the terminals exactly in the trace, and weighing
    at least base_weight plus the matching weight."""
    if plan.particle_witnesses is None:
        raise ContractViolation("plan was built without particle witnesses")
    D = plan.decomposition
    pm = set(plan.base_particles)
    for medge in matching:
        u, v = tuple(medge)
        if u[0] == "slack" or v[0] == "slack":
            te, endnode = (u, v) if u[0] == "slack" else (v, u)
            e = te[1]
            end = endnode[1]
            pm.add((HALF_EDGE, (e, end)))
            pm.discard((EDGE_INTERIOR, e))
            pm.discard((VERTEX, (end,)))
        else:
            x, y = u[1], v[1]
            e = (min(x, y), max(x, y))
            pm.add((FULL_EDGE, e))
            for key in ((HALF_EDGE, (e, e[0])), (HALF_EDGE, (e, e[1])),
                        (EDGE_INTERIOR, e), (VERTEX, (e[0],)), (VERTEX, (e[1],))):
                pm.discard(key)
            for tr in D.triangles():
                if e[0] in tr and e[1] in tr:
                    pm.discard((TRIANGLE, tr))

    out = set()
    for key in pm:
        out |= plan.particle_witnesses[key]
    G = plan.host
    if not G.is_independent(out):
        raise InvariantError("reconstructed set is not independent")
    if out & plan.terminal_set != plan.trace:
        raise InvariantError("reconstructed set does not match the trace on terminals")
    want = plan.base_weight + plan.aux.weight(matching)
    if G.total_weight(out) < want:
        raise InvariantError("reconstructed set lighter than the matching bound")
    return frozenset(out)


def combine_esd(G: WeightedGraph, T, D: ExtendedStripDecomposition,
                particle_profiles, with_witnesses=False) -> BorderProfile:
    """Combine particle profiles into the profile of (G, w, T).

    `particle_profiles` maps every particle of D (keyed by the Particle
    itself) to the profile of (G[A], w, T cap A).  Non-independent
    terminal subsets keep -infinity; for each independent subset the
    auxiliary graph's maximum matching weight added to the base weight
    gives the cell value.
    """
    terminals = _ordered_terminals(G, T)
    tset = frozenset(terminals)
    prof = BorderProfile(terminals, with_witnesses=with_witnesses)
    lookup = {}
    for p in particles(D):
        q = particle_profiles.get(p)
        if q is None:
            raise ContractViolation(f"missing profile for particle {p.kind}{p.anchor}")
        if set(q.terminals) != (p.members & tset):
            raise ContractViolation(
                f"profile terminals for {p.kind}{p.anchor} do not equal T cap A")
        lookup[_particle_key(p)] = (p, q)

    tids = [G.id_of(t) for t in terminals]
    conflicts = []
    for v in tids:
        c = 0
        for j, u in enumerate(tids):
            if u in G.adj[v]:
                c |= 1 << j
        conflicts.append(c)

    for mask in bnb.iter_independent_sets(conflicts):
        trace = prof.labels_of(mask)

        def profile_of(p, trace=trace):
            _, q = lookup[_particle_key(p)]
            return q.table[q.mask_of(trace & p.members)]

        witness_of = None
        if with_witnesses:
            def witness_of(p, trace=trace):
                _, q = lookup[_particle_key(p)]
                w = q.witnesses[q.mask_of(trace & p.members)]
                if w is None:
                    raise ContractViolation(
                        f"particle profile for {p.kind}{p.anchor} lacks witnesses")
                return w

        plan = build_combination_plan(G, D, trace, profile_of, witness_of, terminal_set=tset)
        matching, mweight = max_weight_matching(plan.aux)
        value = plan.base_weight + mweight
        wit = None
        if with_witnesses:
            wit = reconstruct_witness(plan, matching)
            if G.total_weight(wit) != value:
                raise InvariantError("optimal witness weight differs from the cell value")
        prof.update(mask, value, wit)
    return prof
