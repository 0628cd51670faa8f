"""Balanced decomposition step: witness or path family plus a rigid
extended strip decomposition.

The contract: given (G, U, t), either return an induced three-legged
subdivided claw with legs of t edges, or a family P of at most
ceil(11*log2(n) + 6) induced paths, each on at most t + 2 vertices,
together with a rigid extended strip decomposition of G - N[union(P)]
in which every particle holds at most ceil(|U|/2) vertices of U.

The reference implementation searches, by iterative deepening over the
size of X = union(P), for a vertex set whose closed-neighborhood removal
splits the graph into components that are each light in U; the component
decomposition (one isolated pattern vertex per component) is then always
rigid and valid.  Any implementation is accepted as long as its outcomes
pass `validate_outcome`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, InputError
from .esd import ExtendedStripDecomposition, components_esd, particles, validate_esd
from .graph import WeightedGraph, components_masks, neighborhood_mask
from .patterns import SubdividedClawWitness, find_induced_sttt, witness_violations


def path_count_cap(n: int) -> int:
    """Maximum number of paths the contract allows for an n-vertex input."""
    return math.ceil(11 * math.log2(max(n, 1)) + 6)


@dataclass(frozen=True)
class DecomposeBudget:
    max_union_size: int = 4
    max_candidates: int = 400_000


@dataclass(frozen=True)
class DecomposeOutcome:
    """Either a subdivided-claw witness or (paths, decomposition)."""

    witness: SubdividedClawWitness | None = None
    paths: tuple | None = None
    esd: ExtendedStripDecomposition | None = None

    @property
    def found_witness(self) -> bool:
        return self.witness is not None

    def removed_set(self) -> frozenset:
        out = set()
        for p in self.paths:
            out.update(p)
        return frozenset(out)


def validate_outcome(G: WeightedGraph, U, t: int, outcome: DecomposeOutcome) -> list:
    """Re-check every contract condition; empty report iff the outcome holds."""
    if outcome.found_witness:
        report = witness_violations(G, outcome.witness)
        if outcome.witness.leg_lengths() != (t, t, t):
            report.append(f"witness legs {outcome.witness.leg_lengths()} != ({t}, {t}, {t})")
        return report
    report = []
    if len(outcome.paths) > path_count_cap(G.n):
        report.append(f"{len(outcome.paths)} paths exceed the cap {path_count_cap(G.n)}")
    for p in outcome.paths:
        if not p or len(p) > t + 2:
            report.append(f"path {p} has {len(p)} vertices, limit {t + 2}")
            continue
        for i, v in enumerate(p):
            for j in range(i + 1, len(p)):
                adjacent = G.has_edge_labels(v, p[j])
                if (j == i + 1) != adjacent:
                    report.append(f"path {p} is not an induced path")
                    break
    removed = G.closed_neighborhood(outcome.removed_set())
    rest = G.subgraph(G.label_set - removed)
    try:
        report.extend(validate_esd(rest, outcome.esd, require_rigid=True))
    except InputError as exc:
        report.append(f"decomposition references removed vertices: {exc}")
    if not report:
        uset = frozenset(U)
        cap = math.ceil(len(uset) / 2)
        for p in particles(outcome.esd):
            hit = len(p.members & uset)
            if hit > cap:
                report.append(
                    f"particle {p.kind}{p.anchor} holds {hit} of {len(uset)} U-vertices, cap {cap}")
    return report


def decompose(G: WeightedGraph, U, t: int,
              budget: DecomposeBudget | None = None) -> DecomposeOutcome:
    """Reference decomposition search.

    Checks for a witness first; otherwise enumerates candidate sets X in
    order of increasing size (then lexicographic by vertex id), accepting
    the first X that is a disjoint union of short induced paths and whose
    closed-neighborhood removal leaves only U-balanced components.
    """
    budget = budget or DecomposeBudget()
    uset = frozenset(U)
    if not uset <= G.label_set:
        raise InputError("U must be a subset of the vertices")
    witness = find_induced_sttt(G, t)
    if witness is not None:
        return DecomposeOutcome(witness=witness)

    n = G.n
    adjm = G.adj_masks
    full = (1 << n) - 1
    umask = G.mask_of_labels(uset)
    cap = math.ceil(len(uset) / 2)
    pathcap = path_count_cap(n)
    maxlen = t + 2

    best_imbalance = None
    examined = 0
    for size in range(0, min(budget.max_union_size, n) + 1):
        for combo in combinations(range(n), size):
            examined += 1
            if examined > budget.max_candidates:
                raise CapacityError(
                    "decomposition not found within the candidate budget; "
                    f"best imbalance achieved: {best_imbalance}")
            xmask = 0
            for v in combo:
                xmask |= 1 << v
            paths = _paths_of(G, adjm, xmask, pathcap, maxlen)
            if paths is None:
                continue
            alive = full & ~(xmask | neighborhood_mask(adjm, xmask))
            comps = components_masks(adjm, alive)
            worst = max(((c & umask).bit_count() for c in comps), default=0)
            if best_imbalance is None or worst < best_imbalance:
                best_imbalance = worst
            if worst <= cap:
                esd = components_esd([G.labels_of_mask(c) for c in comps])
                outcome = DecomposeOutcome(paths=tuple(paths), esd=esd)
                report = validate_outcome(G, uset, t, outcome)
                if report:
                    raise CapacityError(
                        "reference decomposition failed validation: " + "; ".join(report))
                return outcome
    raise CapacityError(
        "decomposition not found up to union size "
        f"{budget.max_union_size}; best imbalance achieved: {best_imbalance}")


def _paths_of(G, adjm, xmask, pathcap, maxlen):
    """Decompose G[X] into components; each must be an induced path on at
    most `maxlen` vertices.  Returns label tuples or None."""
    comps = components_masks(adjm, xmask)
    if len(comps) > pathcap:
        return None
    paths = []
    for comp in comps:
        size = comp.bit_count()
        if size > maxlen:
            return None
        verts = []
        m = comp
        while m:
            b = m & -m
            verts.append(b.bit_length() - 1)
            m ^= b
        degs = {v: (adjm[v] & comp).bit_count() for v in verts}
        if any(d > 2 for d in degs.values()):
            return None
        ends = [v for v in verts if degs[v] <= 1]
        if size == 1:
            paths.append((G.label_of(verts[0]),))
            continue
        if len(ends) != 2:
            return None  # a cycle
        seq = [ends[0]]
        seen = 1 << ends[0]
        while len(seq) < size:
            nxt = adjm[seq[-1]] & comp & ~seen
            if not nxt:
                return None
            b = nxt & -nxt
            v = b.bit_length() - 1
            seq.append(v)
            seen |= b
        paths.append(tuple(G.label_of(v) for v in seq))
    return paths


def outcome_to_text(outcome: DecomposeOutcome) -> str:
    from .esd import esd_to_text

    if outcome.found_witness:
        w = outcome.witness
        lines = [f"witness center {w.center}"]
        for leg in w.legs:
            lines.append("witness leg " + " ".join(str(v) for v in leg))
        return "\n".join(lines) + "\n"
    lines = [f"paths {len(outcome.paths)}"]
    for p in outcome.paths:
        lines.append("path " + " ".join(str(v) for v in p))
    return "\n".join(lines) + "\n" + esd_to_text(outcome.esd)


def outcome_from_text(text: str) -> DecomposeOutcome:
    from .errors import ParseError
    from .esd import esd_from_text

    lines = text.splitlines()
    paths = []
    esd_start = None
    count = None
    for idx, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "paths":
            count = int(parts[1])
        elif parts[0] == "path":
            paths.append(tuple(int(v) for v in parts[1:]))
        elif parts[0] == "witness":
            raise ParseError("witness outcomes cannot be re-validated from file", idx + 1)
        else:
            esd_start = idx
            break
    if count is None or esd_start is None:
        raise ParseError("outcome file must list paths then a decomposition")
    if count != len(paths):
        raise ParseError(f"expected {count} paths, found {len(paths)}")
    return DecomposeOutcome(paths=tuple(paths), esd=esd_from_text("\n".join(lines[esd_start:])))
