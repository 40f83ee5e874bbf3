import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import ssp_elections
from coalition_control import ControlQuery, Election, cross_check, solve_exhaustive, tally, verify_immunity
from coalition_control.dispatch import SOLVERS, applicable
from coalition_control.instances import GenParams, random_problem
from coalition_control.ssp import build_structure, compact_from_extensive, extensive_from_compact
from lemmas import LEMMAS, check_type_bound

seeds = st.integers(0, 2 ** 32 - 1)


@pytest.mark.parametrize("name", sorted(LEMMAS))
@settings(max_examples=60, deadline=None)
@given(seed=seeds)
def test_lemma_holds(name, seed):
    assert LEMMAS[name](random.Random(seed))


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_type_bound(seed):
    assert check_type_bound(random.Random(seed))


@settings(max_examples=60, deadline=None)
@given(seed=seeds, action=st.sampled_from(["AOP", "DCP"]), kind=st.sampled_from(["ssp", "general"]))
def test_immune_actions_never_help(seed, action, kind):
    e, o, q = random_problem(GenParams(kind=kind, m=5, n=12, k=2, action=action, mode="CC", seed=seed))
    assert verify_immunity(e, o, q).immune
    zero = ControlQuery(q.action, q.mode, 0)
    assert solve_exhaustive(e, o, q).decision == solve_exhaustive(e, o, zero).decision


@settings(max_examples=80, deadline=None)
@given(seed=seeds, name=st.sampled_from([n for n, s in SOLVERS.items() if s.needs_ssp]),
       k=st.integers(0, 3))
def test_solver_matches_oracle(seed, name, k):
    spec = SOLVERS[name]
    q_target = 1 if spec.contiguous else random.Random(seed).choice([1, 2, 3])
    e, o, q = random_problem(GenParams(m=7, n=15, k=k, action=spec.action.value, mode=spec.mode.value,
                                       q_target=q_target, seed=seed))
    assert applicable(name, e, o, q)
    cc = cross_check(e, o, q, solvers=[name])
    assert cc.ok, cc.disagreements


@settings(max_examples=50, deadline=None)
@given(ssp_elections())
def test_compact_profile_preserves_tallies(e):
    compact = compact_from_extensive(e)
    assert sum(compact.counts) == e.n
    rebuilt = Election(e.parties, tuple(extensive_from_compact(compact, build_structure(e)[1])))
    ids = sorted(e.ids)
    for cut in range(1, len(ids) + 1):
        running = set(ids[:cut])
        assert tally(running, e).votes == tally(running, rebuilt).votes
