"""Bitmask branch-and-bound for maximum-weight independent sets.

This is the workhorse behind every brute-force oracle in the package.
It is deliberately independent of the decomposition machinery: plain
include/exclude branching on a maximum-degree vertex with a
sum-of-remaining-weights upper bound.
"""

from __future__ import annotations

from .errors import CapacityError


def max_weight_set(adj_masks, weights, alive: int, node_cap=None):
    """Exact MWIS restricted to the vertices in `alive`.

    Returns (best_weight, best_mask).  `node_cap`, when given, bounds the
    number of branch nodes and raises CapacityError beyond it.
    """
    best_w = 0
    best_m = 0

    # Greedy seed by descending weight for an initial lower bound.
    order = sorted(_bits(alive), key=lambda v: (-weights[v], v))
    taken = 0
    blocked = 0
    gw = 0
    for v in order:
        b = 1 << v
        if blocked & b:
            continue
        taken |= b
        blocked |= b | adj_masks[v]
        gw += weights[v]
    if gw > best_w:
        best_w, best_m = gw, taken

    nodes = 0

    def dfs(mask, cur_w, cur_m):
        nonlocal best_w, best_m, nodes
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            raise CapacityError("branch-and-bound node budget exceeded")
        # Harvest isolated vertices and compute the remaining-weight bound.
        rem_w = 0
        pick = -1
        pick_deg = -1
        m = mask
        while m:
            b = m & -m
            v = b.bit_length() - 1
            if adj_masks[v] & mask == 0:
                cur_w += weights[v]
                cur_m |= b
                mask ^= b
            else:
                rem_w += weights[v]
                d = (adj_masks[v] & mask).bit_count()
                if d > pick_deg:
                    pick_deg = d
                    pick = v
            m ^= b
        if cur_w > best_w:
            best_w, best_m = cur_w, cur_m
        if not mask or cur_w + rem_w <= best_w:
            return
        pb = 1 << pick
        dfs(mask & ~(adj_masks[pick] | pb), cur_w + weights[pick], cur_m | pb)
        dfs(mask ^ pb, cur_w, cur_m)

    dfs(alive, 0, 0)
    return best_w, best_m


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def iter_independent_sets(conflict_masks):
    """Yield all independent position masks over a sequence of items.

    `conflict_masks[i]` holds, as bits over positions, the items that
    conflict with item i.  Enumeration order is depth-first with
    "skip item" explored before "take item", which makes downstream
    tie-breaking deterministic.
    """
    k = len(conflict_masks)

    def rec(i, mask, forbidden):
        if i == k:
            yield mask
            return
        yield from rec(i + 1, mask, forbidden)
        if not (forbidden >> i) & 1:
            yield from rec(i + 1, mask | (1 << i), forbidden | conflict_masks[i])

    yield from rec(0, 0, 0)
