from fractions import Fraction as F

import pytest

from cases import four_party_acp_favored, problem, ssp_acp, three_party_acp
from coalition_control import ControlQuery, Party, VoterBlock, simulate, solve_exhaustive, verify_immunity
from coalition_control.instances import GenParams, random_problem
from coalition_control.oracle import CapacityError, count_subsets


def test_three_party_acp_yes():
    out = solve_exhaustive(*three_party_acp())
    assert out.decision and out.witness == {"p2"}
    assert F(out.coalition_votes, 6) == F(2, 3)


def test_four_party_favored_acp():
    e, o, q = four_party_acp_favored()
    out = solve_exhaustive(e, o, q)
    assert out.decision and out.witness == {"p2"}
    assert (out.coalition_votes, out.favored_votes) == (4, 2)
    assert not simulate(e, o, q, {"p3"}).ok


def test_budget_zero_is_baseline():
    e, o, _ = three_party_acp()
    out = solve_exhaustive(e, o, ControlQuery("ACP", "CC", 0))
    assert out.decision == simulate(e, o, ControlQuery("ACP", "CC", 0), ()).ok
    assert not out.decision and out.witness is None


def test_witness_is_smallest_then_lexicographic():
    parties = [Party("c", coalition=True), Party("o1"), Party("o2"), Party("o3")]
    voters = [VoterBlock(1, order=("o2", "c", "o1", "o3")), VoterBlock(1, order=("o3", "c", "o1", "o2"))]
    e, o, q = problem(parties, voters, F(1, 2), "DOP", 3)
    assert solve_exhaustive(e, o, q).witness == {"o2"}


def test_capacity_is_a_hard_error():
    e, o, q = random_problem(GenParams(m=8, n=5, k=3, action="DOP", mode="CC", seed=1))
    assert count_subsets(8, 3) == 93
    with pytest.raises(CapacityError):
        solve_exhaustive(e, o, q, cap=10)


def test_immunity_with_empty_pool():
    e, o, _ = ssp_acp()
    report = verify_immunity(e, o, ControlQuery("AOP", "CC", 1))
    assert report.immune and report.checked == 1


def test_immunity_opposition_spoiler_recast():
    parties = [Party("p1", coalition=True), Party("p2", coalition=True), Party("p3", spoiler=True)]
    voters = [
        VoterBlock(2, order=("p3", "p2", "p1")),
        VoterBlock(2, order=("p2", "p3", "p1")),
        VoterBlock(2, order=("p1", "p3", "p2")),
    ]
    e, o, q = problem(parties, voters, F(2, 3), "AOP", 1)
    report = verify_immunity(e, o, q)
    assert report.immune
    assert (report.baseline_votes, report.best_votes) == (6, 6)


def test_immunity_rejects_other_problems():
    with pytest.raises(ValueError):
        verify_immunity(*three_party_acp())


@pytest.mark.parametrize("seed", range(40))
def test_budget_anti_monotone(seed):
    e, o, q = random_problem(GenParams(m=6, n=12, k=0, seed=seed))
    decisions = [solve_exhaustive(e, o, ControlQuery(q.action, q.mode, k)).decision for k in range(4)]
    assert decisions == sorted(decisions)
