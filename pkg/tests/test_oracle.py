import random

import pytest

from stripmwis.border import brute_force_border
from stripmwis.errors import CapacityError
from stripmwis.graph import WeightedGraph
from stripmwis.oracle import OracleBudget, mwis_bruteforce, verify_solution

from helpers import random_graph, union_graph


def test_c5_unit():
    G = WeightedGraph(range(5), [1] * 5, [(i, (i + 1) % 5) for i in range(5)])
    assert mwis_bruteforce(G)[0] == 2


def test_empty_graph():
    G = WeightedGraph([], [], [])
    w, wit = mwis_bruteforce(G)
    assert (w, wit) == (0, frozenset())


def test_p4_weights():
    G = WeightedGraph(range(4), [1, 9, 9, 1], [(0, 1), (1, 2), (2, 3)])
    w, wit = mwis_bruteforce(G)
    assert w == 10 and G.total_weight(wit) == 10


def test_budget_guard():
    G = WeightedGraph(range(41), [1] * 41, [])
    with pytest.raises(CapacityError):
        mwis_bruteforce(G)
    assert mwis_bruteforce(G, OracleBudget(max_vertices=41))[0] == 41


def test_doubling_and_additivity():
    rng = random.Random(8)
    for _ in range(20):
        G = random_graph(rng, rng.randint(0, 12), 0.4)
        w, _ = mwis_bruteforce(G)
        doubled = WeightedGraph(G.labels, [2 * x for x in G.weights],
                                [(G.labels[u], G.labels[v]) for u, v in G.edges_ids()])
        assert mwis_bruteforce(doubled)[0] == 2 * w
        H = random_graph(rng, rng.randint(0, 10), 0.4)
        both = union_graph([G, H])
        assert mwis_bruteforce(both)[0] == w + mwis_bruteforce(H)[0]


def test_witness_weight_always_matches():
    rng = random.Random(9)
    for _ in range(30):
        G = random_graph(rng, rng.randint(0, 14), rng.uniform(0.1, 0.7))
        w, wit = mwis_bruteforce(G)
        assert G.is_independent(wit)
        assert G.total_weight(wit) == w


def test_verify_solution_empty_report_and_mismatch():
    rng = random.Random(10)
    G = random_graph(rng, 8, 0.4)
    T = frozenset(list(G.labels)[:3])
    prof = brute_force_border(G, T)
    assert verify_solution(G, T, prof) == []
    cell = next(m for m, v in prof.cells() if v is not None)
    prof.table[cell] += 1
    report = verify_solution(G, T, prof)
    assert len(report) == 1


def test_verify_solution_single_cell_against_oracle():
    rng = random.Random(12)
    G = random_graph(rng, 10, 0.3)
    prof = brute_force_border(G, set())
    assert prof.table[0] == mwis_bruteforce(G)[0]
