"""Control by deleting parties under symmetric single-peaked preferences.

Inside one interval only deletions touching an end of the interval (or, for
the interval holding the favored party, touching the favored party) can move
votes across sides or onto the favored party. Every option below is a set of
such end runs, and every delta is obtained by re-tallying the explicit set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .model import (
    Action,
    ControlQuery,
    Election,
    Mode,
    Objective,
    SolveOutcome,
    SolverMismatch,
    accepts,
    apply_action,
    finish,
)
from .ssp import decompose_intervals
from .tables import (
    Options,
    baseline,
    best_gain_by_budget,
    combine_max,
    counts,
    solve_by_reachability,
)


@dataclass(frozen=True)
class EndRunOption:
    left: int  # deleted from the left end of the interval
    right: int  # deleted from the right end
    fav_left: int  # deleted immediately left of the favored party
    fav_right: int  # deleted immediately right of the favored party
    deleted: tuple[str, ...]
    coalition_delta: int
    favored_delta: int

    @property
    def size(self) -> int:
        return len(self.deleted)


def _runs_two(interval: Sequence[str], budget: int):
    r = len(interval)
    for a in range(min(budget, r) + 1):
        for b in range(min(budget - a, r - a) + 1):
            yield (a, b, 0, 0), tuple(interval[:a]) + tuple(interval[r - b:])


def _runs_four(interval: Sequence[str], favored: str, budget: int):
    f = interval.index(favored)
    lhs, rhs = interval[:f], interval[f + 1:]
    for a, c in _splits(len(lhs), budget):
        for d, b in _splits(len(rhs), budget - a - c):
            deleted = lhs[:a] + lhs[len(lhs) - c:] + rhs[:d] + rhs[len(rhs) - b:]
            yield (a, b, c, d), tuple(deleted)


def _splits(length: int, budget: int):
    """(outer, inner) run lengths on one side that do not overlap."""
    for outer in range(min(budget, length) + 1):
        for inner in range(min(budget - outer, length - outer) + 1):
            yield outer, inner


def enumerate_end_runs(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    interval: Sequence[str],
    budget: int,
    locations: int = 2,
) -> list[EndRunOption]:
    """All distinct end-run deletions of at most ``budget`` parties in ``interval``.

    ``interval`` is a run of parties in spectrum order. With four locations
    the favored party must lie in the interval and is never deleted.
    """
    interval = list(interval)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if locations == 4:
        if objective.favored is None or objective.favored not in interval:
            raise ValueError("four-location runs need the favored party inside the interval")
        shapes = _runs_four(interval, objective.favored, budget)
    elif locations == 2:
        shapes = _runs_two(interval, budget)
    else:
        raise ValueError(f"locations must be 2 or 4, got {locations}")
    wide = ControlQuery(query.action, query.mode, max(query.k, budget))
    base = counts(election, objective, apply_action(election, objective, wide, ()))
    seen = set()
    out = []
    for (a, b, c, d), deleted in shapes:
        key = frozenset(deleted)
        if key in seen:
            continue
        seen.add(key)
        n_c, n_f = counts(election, objective, apply_action(election, objective, wide, deleted))
        out.append(EndRunOption(a, b, c, d, deleted, n_c - base[0], n_f - base[1]))
    out.sort(key=lambda o: (o.size, sorted(o.deleted)))
    return out


def _as_table(options: Sequence[EndRunOption]) -> Options:
    table: Options = {}
    for o in options:
        key = (o.coalition_delta, o.favored_delta)
        if key not in table or o.size < table[key][0]:
            table[key] = (o.size, tuple(sorted(o.deleted)))
    return table


def _setup(election: Election, objective: Objective, action: Action, mode: Mode, k: int):
    if not election.is_ssp:
        raise SolverMismatch("this solver needs symmetric single-peaked preferences")
    if objective.mode is not mode:
        raise SolverMismatch(f"this solver handles {mode.value} objectives only")
    if election.spoilers:
        raise SolverMismatch("deleting variants take no spoiler parties")
    query = ControlQuery(action, mode, k)
    return query, decompose_intervals(election, objective.coalition)


def solve_cc_dop(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, dec = _setup(election, objective, Action.DOP, Mode.CC, k)
    gains = [
        best_gain_by_budget(_as_table(enumerate_end_runs(election, objective, query, run, k)), k)
        for run in dec.opposition
    ]
    gain, witness, entries = combine_max(gains, k)
    base_c, _ = baseline(election, objective, query)
    ok = accepts(objective, election.n, base_c + gain, 0)
    out = finish(election, objective, query, witness if ok else None, "cc_dop_dp",
                 stats={"table_entries": entries, "q": dec.q})
    if ok and out.coalition_votes != base_c + gain:
        raise AssertionError("cc_dop_dp: interval gains are not additive")
    return out


def solve_cc_dcp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    """Deleting coalition parties never helps the coalition total; answer at k = 0."""
    if objective.mode is not Mode.CC:
        raise SolverMismatch("the immunity shortcut only holds for CC objectives")
    query = ControlQuery(Action.DCP, Mode.CC, k)
    ok = accepts(objective, election.n, baseline(election, objective, query)[0], 0)
    return finish(election, objective, query, () if ok else None, "cc_dcp_immune", immune=True)


def _first_accepted(election, objective, base, options) -> Optional[tuple[str, ...]]:
    for o in options:
        if accepts(objective, election.n, base[0] + o.coalition_delta, base[1] + o.favored_delta):
            return tuple(sorted(o.deleted))
    return None


def solve_ccfp_dcp_contiguous(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, dec = _setup(election, objective, Action.DCP, Mode.CCFP, k)
    if dec.q != 1:
        raise SolverMismatch(f"coalition is not contiguous (q = {dec.q}); use ccfp_dcp_dp")
    options = enumerate_end_runs(election, objective, query, dec.coalition[0], k, locations=4)
    base = baseline(election, objective, query)
    witness = _first_accepted(election, objective, base, options)
    return finish(election, objective, query, witness, "ccfp_dcp_contiguous")


def solve_ccfp_dcp_dp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, dec = _setup(election, objective, Action.DCP, Mode.CCFP, k)
    tables = []
    for run in dec.coalition:
        locations = 4 if objective.favored in run else 2
        tables.append(_as_table(enumerate_end_runs(election, objective, query, run, k, locations)))
    return solve_by_reachability(election, objective, query, tables, "ccfp_dcp_dp", dec.q)


def solve_ccfp_dop_contiguous(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, dec = _setup(election, objective, Action.DOP, Mode.CCFP, k)
    if dec.q != 1:
        raise SolverMismatch(f"coalition is not contiguous (q = {dec.q}); use ccfp_dop_dp")
    left = enumerate_end_runs(election, objective, query, dec.opposition[0], k)
    right = enumerate_end_runs(election, objective, query, dec.opposition[1], k)
    base = baseline(election, objective, query)
    pairs = sorted(
        ((x, y) for x, y in product(left, right) if x.size + y.size <= k),
        key=lambda xy: (xy[0].size + xy[1].size, sorted(xy[0].deleted + xy[1].deleted)),
    )
    witness = None
    for x, y in pairs:
        if accepts(objective, election.n, base[0] + x.coalition_delta + y.coalition_delta,
                   base[1] + x.favored_delta + y.favored_delta):
            witness = tuple(sorted(x.deleted + y.deleted))
            break
    return finish(election, objective, query, witness, "ccfp_dop_contiguous")


def solve_ccfp_dop_dp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, dec = _setup(election, objective, Action.DOP, Mode.CCFP, k)
    tables = [
        _as_table(enumerate_end_runs(election, objective, query, run, k))
        for run in dec.opposition
    ]
    return solve_by_reachability(election, objective, query, tables, "ccfp_dop_dp", dec.q)
