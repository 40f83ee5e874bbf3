"""Exhaustive ground truth for all eight control problems."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Optional

from .model import (
    Action,
    ActionError,
    ControlQuery,
    Election,
    Mode,
    Objective,
    SolveOutcome,
    apply_action,
    candidate_pool,
    evaluate_objectives,
    finish,
    tally,
)

DEFAULT_CAP = 2 ** 20


class CapacityError(RuntimeError):
    """Exhaustive enumeration would exceed the configured subset cap."""


def count_subsets(pool_size: int, k: int) -> int:
    return sum(comb(pool_size, i) for i in range(min(k, pool_size) + 1))


def _subsets(pool: tuple[str, ...], k: int, cap: int) -> Iterator[tuple[str, ...]]:
    total = count_subsets(len(pool), k)
    if total > cap:
        raise CapacityError(f"{total} subsets of a pool of {len(pool)} exceed the cap {cap}")
    for size in range(min(k, len(pool)) + 1):
        yield from combinations(pool, size)


def solve_exhaustive(
    election: Election, objective: Objective, query: ControlQuery, cap: int = DEFAULT_CAP
) -> SolveOutcome:
    """First satisfying action set in (size, sorted ids) order, or no."""
    pool = candidate_pool(election, objective, query)
    explored = 0
    for chosen in _subsets(pool, query.k, cap):
        explored += 1
        try:
            running = apply_action(election, objective, query, chosen)
        except ActionError:
            continue  # empty running set
        if evaluate_objectives(tally(running, election), objective).ok:
            return finish(election, objective, query, chosen, "oracle", stats={"subsets": explored})
    return finish(election, objective, query, None, "oracle", stats={"subsets": explored})


@dataclass(frozen=True)
class ImmunityReport:
    baseline_votes: int
    best_votes: int
    best_set: tuple[str, ...]
    checked: int
    violations: tuple[tuple[str, ...], ...]

    @property
    def immune(self) -> bool:
        return not self.violations


def verify_immunity(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    cap: int = DEFAULT_CAP,
    budget: Optional[int] = None,
) -> ImmunityReport:
    """Check that no action set (default: any size) raises the coalition's vote count."""
    if query.mode is not Mode.CC or query.action not in (Action.AOP, Action.DCP):
        raise ValueError(f"immunity is only claimed for CC-AOP and CC-DCP, not {query.name}")
    pool = candidate_pool(election, objective, query)
    k = len(pool) if budget is None else budget
    wide = ControlQuery(query.action, query.mode, k)
    baseline = evaluate_objectives(
        tally(apply_action(election, objective, wide, ()), election), objective
    ).coalition_votes
    best, best_set, checked, bad = baseline, (), 0, []
    for chosen in _subsets(pool, k, cap):
        try:
            running = apply_action(election, objective, wide, chosen)
        except ActionError:
            continue
        checked += 1
        votes = evaluate_objectives(tally(running, election), objective).coalition_votes
        if votes > best:
            best, best_set = votes, chosen
        if votes > baseline:
            bad.append(chosen)
    return ImmunityReport(baseline, best, best_set, checked, tuple(bad))
