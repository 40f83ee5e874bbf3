from fractions import Fraction as F
from itertools import combinations

import pytest

from coalition_control import solve_exhaustive
from coalition_control.reductions import (
    Graph,
    SubsetSumInstance,
    clique_gadget,
    decode_witness,
    dominating_set_gadget,
    has_clique,
    has_dense_k_set,
    has_dominating_set,
    has_subset_sum,
    subset_sum_gadget,
)
from coalition_control.ssp import dividers

TRIANGLE = Graph(range(3), [(0, 1), (1, 2), (0, 2)])
PATH = Graph(range(3), [(0, 1), (1, 2)])
PAIR = Graph(range(2), [])
K4 = Graph(range(4), list(combinations(range(4), 2)))


@pytest.mark.parametrize("target", ["CC-ACP", "CCFP-AOP"])
@pytest.mark.parametrize("graph, expected", [(TRIANGLE, True), (PAIR, False), (PATH, True)])
def test_dominating_set_gadget_small(graph, expected, target):
    gadget = dominating_set_gadget(graph, 1, target)
    out = solve_exhaustive(*gadget.problem)
    assert out.decision == expected == (has_dominating_set(graph, 1) is not None)
    if out.decision:
        chosen = decode_witness(gadget, out.witness)
        assert has_dominating_set(Graph(graph.vertices, graph.edges), len(chosen))


def test_path_is_dominated_by_its_center():
    gadget = dominating_set_gadget(PATH, 1, "CC-ACP")
    assert decode_witness(gadget, solve_exhaustive(*gadget.problem).witness) == {1}


def test_dominating_set_gadget_sizes():
    g = dominating_set_gadget(PATH, 2, "CC-ACP")
    assert len(g.election.parties) == 2 + 3 and g.election.n == 6 and g.objective.phi == F(1, 2)
    even = Graph(range(4), [(0, 1)])
    g = dominating_set_gadget(even, 2, "CCFP-AOP")
    assert g.election.n == 8 and (g.objective.phi, g.objective.rho) == (F(1, 2), F(1, 2))
    g = dominating_set_gadget(PATH, 2, "CCFP-AOP")
    assert g.election.n == 12 and "doubled" in g.note


def test_neighborhood_orders_break_ties_by_vertex():
    g = dominating_set_gadget(PATH, 1, "CC-ACP")
    assert g.election.voters[1].order[:5] == ("s1", "s2", "s3", "p2", "p1")


def test_clique_gadget_formula_and_trivial_no():
    g = clique_gadget(TRIANGLE, 2, "CC-DOP")
    assert g.query.k == 0 and "phi = 4/3" in g.note
    assert not solve_exhaustive(*g.problem).decision
    g = clique_gadget(K4, 2, "CC-DOP")
    assert g.objective.phi == F(4, 6) and len(g.election.parties) == 5 and g.election.n == 6
    g = clique_gadget(K4, 2, "CCFP-DCP")
    assert g.objective.rho == F(10, 12) and g.election.n == 24


def test_clique_gadget_under_square_edge_count():
    for target in ("CC-DOP", "CCFP-DCP"):
        g = clique_gadget(K4, 2, target)
        assert solve_exhaustive(*g.problem).decision == (has_dense_k_set(K4, 2) is not None)
    # a real 2-clique exists, so the gadget disagrees with plain clique search
    assert has_clique(K4, 2) and not has_dense_k_set(K4, 2)


def test_clique_gadget_preconditions():
    with pytest.raises(ValueError, match="no edges"):
        clique_gadget(PAIR, 1)
    with pytest.raises(ValueError, match="at least 1"):
        clique_gadget(K4, 0)


@pytest.mark.parametrize("bad", [
    lambda: Graph([0], [(0, 0)]),
    lambda: Graph([0, 1], [(0, 2)]),
    lambda: SubsetSumInstance([1, 0], 1, 1),
    lambda: SubsetSumInstance([1], 1, 2),
])
def test_source_validation(bad):
    with pytest.raises(ValueError):
        bad()


TARGETS = ["CCFP-ACP", "CCFP-AOP", "CCFP-DCP", "CCFP-DOP"]


@pytest.mark.parametrize("target", TARGETS)
@pytest.mark.parametrize("values, tau, k, expected", [
    ([1, 2, 3], 3, 2, True),
    ([2, 4], 5, 2, False),
    ([7], 7, 1, True),
    ([2, 4], 9, 2, False),
])
def test_subset_sum_gadget_small(values, tau, k, expected, target):
    ssi = SubsetSumInstance(values, tau, k)
    out = solve_exhaustive(*subset_sum_gadget(ssi, target).problem)
    assert out.decision == expected == (has_subset_sum(ssi) is not None)


@pytest.mark.parametrize("target", TARGETS)
def test_subset_sum_gadget_is_valid_ssp(target):
    ssi = SubsetSumInstance([3, 1, 4, 1, 5], 6, 3)
    g = subset_sum_gadget(ssi, target)
    e = g.election
    assert e.is_ssp and len(e.parties) == 11
    ds = set(dividers(p.position for p in e.parties))
    assert not any(b.peak in ds for b in e.voters)
    pos = {p.id: p.position for p in e.parties}
    for i in range(1, 6):
        others = [pid for pid in pos if pid != f"s{i}"]
        assert min(others, key=lambda pid: abs(pos[pid] - pos[f"s{i}"])) == f"b{i}"
    fixed = 6 if target in ("CCFP-ACP", "CCFP-DOP") else 14 - 6
    assert e.n == 14 + fixed
    assert g.objective.phi == F(2 * fixed, fixed + 14)


def test_subset_sum_witness_decodes_to_a_solution():
    ssi = SubsetSumInstance([5, 1, 2, 3], 6, 2)
    for target in TARGETS:
        g = subset_sum_gadget(ssi, target)
        chosen = decode_witness(g, solve_exhaustive(*g.problem).witness)
        assert sum(ssi.values[i] for i in chosen) == 6 and len(chosen) <= 2


def test_target_equal_to_sum_uses_trivial_instance():
    g = subset_sum_gadget(SubsetSumInstance([2, 3], 5, 2), "CCFP-AOP")
    assert "equals" in g.note and solve_exhaustive(*g.problem).decision
    g = subset_sum_gadget(SubsetSumInstance([2, 3], 5, 1), "CCFP-DCP")
    assert not solve_exhaustive(*g.problem).decision
