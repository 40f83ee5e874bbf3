"""Control by adding spoiler parties under symmetric single-peaked preferences."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable

from .model import (
    Action,
    ControlQuery,
    Election,
    Mode,
    Objective,
    SolveOutcome,
    SolverMismatch,
    accepts,
    can_run,
    candidate_pool,
    finish,
)
from .ssp import IntervalDecomposition, decompose_intervals
from .tables import (
    baseline,
    best_gain_by_budget,
    combine_max,
    option_table,
    solve_by_reachability,
)


def _setup(election: Election, objective: Objective, action: Action, mode: Mode, k: int):
    if not election.is_ssp:
        raise SolverMismatch("this solver needs symmetric single-peaked preferences")
    if objective.mode is not mode:
        raise SolverMismatch(f"this solver handles {mode.value} objectives only")
    query = ControlQuery(action, mode, k)
    pool = candidate_pool(election, objective, query)
    # spoilers of the other side never run, so they cannot separate intervals
    dec = decompose_intervals(election, objective.coalition, can_run(election, objective, query))
    return query, pool, dec


def _small_subsets(parties: Iterable[str], limit: int) -> list[tuple[str, ...]]:
    parties = sorted(parties)
    return [c for size in range(limit + 1) for c in combinations(parties, size)]


def prune_interval_subset(
    election: Election, dec: IntervalDecomposition, chosen: Iterable[str], side: str
) -> tuple[str, ...]:
    """Leftmost and rightmost member of an action set lying inside one interval."""
    chosen = set(chosen)
    runs = dec.coalition if side == "coalition" else dec.opposition
    homes = {i for i, run in enumerate(runs) for pid in run if pid in chosen}
    if len(homes) > 1 or (chosen and not homes):
        raise ValueError(f"{sorted(chosen)} is not inside a single {side} interval")
    line = [pid for pid in election.sorted_ids if pid in chosen]
    return tuple(dict.fromkeys(line[:1] + line[-1:]))


def solve_cc_acp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, pool, dec = _setup(election, objective, Action.ACP, Mode.CC, k)
    cap = min(2, k)
    gains = []
    for run in dec.coalition:
        spoilers = [p for p in run if p in pool]
        table = option_table(election, objective, query, _small_subsets(spoilers, cap))
        gains.append(best_gain_by_budget(table, k))
    gain, witness, entries = combine_max(gains, k)
    base_c, _ = baseline(election, objective, query)
    ok = accepts(objective, election.n, base_c + gain, 0)
    out = finish(election, objective, query, witness if ok else None, "cc_acp_dp",
                 stats={"table_entries": entries, "q": dec.q})
    if ok and out.coalition_votes != base_c + gain:
        raise AssertionError("cc_acp_dp: interval gains are not additive")
    return out


def solve_ccfp_acp_contiguous(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, pool, dec = _setup(election, objective, Action.ACP, Mode.CCFP, k)
    if dec.q != 1:
        raise SolverMismatch(f"coalition is not contiguous (q = {dec.q}); use ccfp_acp_dp")
    base = baseline(election, objective, query)
    table = option_table(election, objective, query, _small_subsets(pool, min(2, k)))
    witness = None
    for (dc, df), (_, chosen) in sorted(table.items(), key=lambda kv: (kv[1][0], kv[1][1])):
        if accepts(objective, election.n, base[0] + dc, base[1] + df):
            witness = chosen
            break
    return finish(election, objective, query, witness, "ccfp_acp_contiguous")


def solve_ccfp_acp_dp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, pool, dec = _setup(election, objective, Action.ACP, Mode.CCFP, k)
    tables = []
    for run in dec.coalition:
        spoilers = [p for p in run if p in pool]
        tables.append(option_table(election, objective, query, _small_subsets(spoilers, min(2, k))))
    return solve_by_reachability(election, objective, query, tables, "ccfp_acp_dp", dec.q)


def solve_ccfp_aop_contiguous(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, pool, dec = _setup(election, objective, Action.AOP, Mode.CCFP, k)
    if dec.q != 1:
        raise SolverMismatch(f"coalition is not contiguous (q = {dec.q}); use ccfp_aop_dp")
    left = [None] + sorted(p for p in dec.opposition[0] if p in pool)
    right = [None] + sorted(p for p in dec.opposition[1] if p in pool)
    candidates = []
    for a, b in product(left, right):
        chosen = tuple(sorted(p for p in (a, b) if p is not None))
        if len(chosen) <= k:
            candidates.append(chosen)
    candidates.sort(key=lambda c: (len(c), c))
    base = baseline(election, objective, query)
    table = option_table(election, objective, query, candidates)
    witness = None
    for (dc, df), (_, chosen) in sorted(table.items(), key=lambda kv: (kv[1][0], kv[1][1])):
        if accepts(objective, election.n, base[0] + dc, base[1] + df):
            witness = chosen
            break
    return finish(election, objective, query, witness, "ccfp_aop_contiguous")


def solve_ccfp_aop_dp(election: Election, objective: Objective, k: int) -> SolveOutcome:
    query, pool, dec = _setup(election, objective, Action.AOP, Mode.CCFP, k)
    tables = []
    for run in dec.opposition:
        spoilers = [p for p in run if p in pool]
        tables.append(option_table(election, objective, query, _small_subsets(spoilers, min(2, k))))
    return solve_by_reachability(election, objective, query, tables, "ccfp_aop_dp", dec.q)


def solve_cc_aop(election: Election, objective: Objective, k: int) -> SolveOutcome:
    """Adding opposition parties never helps the coalition total; answer at k = 0."""
    if objective.mode is not Mode.CC:
        raise SolverMismatch("the immunity shortcut only holds for CC objectives")
    query = ControlQuery(Action.AOP, Mode.CC, k)
    ok = accepts(objective, election.n, baseline(election, objective, query)[0], 0)
    return finish(election, objective, query, () if ok else None, "cc_aop_immune", immune=True)
