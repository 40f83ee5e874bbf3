"""Batch verification against the oracle, and table-size benchmarks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional

from .dispatch import SOLVERS, cross_check, run_solver
from .instances import GenParams, Problem, load_instance, random_problem
from .model import SolveOutcome, apply_action, candidate_pool, check_outcome, ActionError
from .oracle import DEFAULT_CAP, CapacityError


@dataclass
class VerifyRow:
    instance: str
    problem: str
    oracle_decision: Optional[bool] = None
    solvers: dict[str, dict] = field(default_factory=dict)
    disagreements: list[str] = field(default_factory=list)
    capacity_error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.disagreements and self.capacity_error is None


@dataclass
class VerifyReport:
    rows: list[VerifyRow]

    @property
    def disagreements(self) -> int:
        return sum(len(r.disagreements) for r in self.rows)

    @property
    def capacity_errors(self) -> int:
        return sum(r.capacity_error is not None for r in self.rows)

    @property
    def exit_code(self) -> int:
        if self.disagreements:
            return 2
        if self.capacity_errors:
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "instances": len(self.rows),
            "disagreements": self.disagreements,
            "capacity_errors": self.capacity_errors,
            "rows": [r.__dict__ | {"ok": r.ok} for r in self.rows],
        }


def corrupt_witness(problem: Problem, outcome: SolveOutcome) -> Optional[SolveOutcome]:
    """A copy of a yes-outcome whose witness is toggled by one party until it fails.

    Returns ``None`` when every single-party toggle still satisfies the objectives.
    """
    election, objective, query = problem
    if not outcome.decision:
        return None
    for pid in candidate_pool(election, objective, query):
        bad = set(outcome.witness) ^ {pid}
        try:
            apply_action(election, objective, query, bad)
        except ActionError:
            continue
        forged = replace(outcome, witness=frozenset(bad))
        if not check_outcome(election, objective, query, forged):
            return forged
    return None


def verify_problem(name: str, problem: Problem, cap: int = DEFAULT_CAP,
                   inject_corruption: bool = False) -> VerifyRow:
    election, objective, query = problem
    row = VerifyRow(name, query.name)
    try:
        cc = cross_check(election, objective, query, cap=cap)
    except CapacityError as exc:
        row.capacity_error = str(exc)
        return row
    row.oracle_decision = cc.oracle.decision
    row.disagreements = list(cc.disagreements)
    for solver, out in cc.outcomes.items():
        if inject_corruption:
            out = corrupt_witness(problem, out) or out
        valid = check_outcome(election, objective, query, out)
        row.solvers[solver] = {
            "decision": out.decision,
            "witness": sorted(out.witness or ()),
            "witness_valid": valid,
        }
        if not valid:
            row.disagreements.append(f"{solver}: witness {sorted(out.witness or ())} fails re-simulation")
    return row


def verify_paths(paths: Iterable[Path], cap: int = DEFAULT_CAP,
                 inject_corruption: bool = False) -> VerifyReport:
    files = []
    for p in paths:
        p = Path(p)
        files += sorted(p.glob("*.json")) if p.is_dir() else [p]
    return VerifyReport([
        verify_problem(f.name, load_instance(f), cap, inject_corruption) for f in files
    ])


def verify_seeds(seeds: Iterable[int], base: GenParams = GenParams(), cap: int = DEFAULT_CAP,
                 inject_corruption: bool = False) -> VerifyReport:
    return VerifyReport([
        verify_problem(f"seed-{s}", random_problem(replace(base, seed=s)), cap, inject_corruption)
        for s in seeds
    ])


DP_SOLVERS = ("cc_acp_dp", "cc_dop_dp", "ccfp_acp_dp", "ccfp_aop_dp", "ccfp_dcp_dp", "ccfp_dop_dp")


@dataclass(frozen=True)
class BenchRow:
    solver: str
    n: int
    seed: int
    table_entries: int
    wall_seconds: float
    decision: bool


def bench(ns: Iterable[int] = (50, 100, 200, 400), m: int = 8, k: int = 3, q: int = 2,
          seeds: Iterable[int] = range(5), solvers: Iterable[str] = DP_SOLVERS) -> list[BenchRow]:
    """Time each DP and count its stored table entries over a sweep of n.

    For one seed the party layout is identical across n; only the voters grow.
    """
    rows = []
    for name in solvers:
        spec = SOLVERS[name]
        for seed in seeds:
            for n in ns:
                params = GenParams(m=m, n=n, k=k, q_target=q, seed=seed,
                                   action=spec.action.value, mode=spec.mode.value)
                election, objective, query = random_problem(params)
                start = time.perf_counter()
                out = run_solver(name, election, objective, query)
                wall = time.perf_counter() - start
                rows.append(BenchRow(name, n, seed, out.stats["table_entries"], wall, out.decision))
    return rows


def doubling_ratios(rows: Iterable[BenchRow]) -> dict[str, list[tuple[int, float]]]:
    """Per solver, total table entries at 2n divided by the total at n."""
    totals: dict[str, dict[int, int]] = {}
    for r in rows:
        totals.setdefault(r.solver, {}).setdefault(r.n, 0)
        totals[r.solver][r.n] += r.table_entries
    out = {}
    for solver, by_n in totals.items():
        out[solver] = [
            (n, by_n[2 * n] / by_n[n]) for n in sorted(by_n) if 2 * n in by_n
        ]
    return out
