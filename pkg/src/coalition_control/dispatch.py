"""Solver registry, automatic routing, cross-checking against the oracle, and timing."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .adding import (
    solve_cc_acp,
    solve_cc_aop,
    solve_ccfp_acp_contiguous,
    solve_ccfp_acp_dp,
    solve_ccfp_aop_contiguous,
    solve_ccfp_aop_dp,
)
from .deleting import (
    solve_cc_dcp,
    solve_cc_dop,
    solve_ccfp_dcp_contiguous,
    solve_ccfp_dcp_dp,
    solve_ccfp_dop_contiguous,
    solve_ccfp_dop_dp,
)
from .model import (
    Action,
    ControlQuery,
    Election,
    Mode,
    Objective,
    SolveOutcome,
    SolverMismatch,
    can_run,
    check_outcome,
    validate_problem,
)
from .oracle import DEFAULT_CAP, solve_exhaustive
from .ssp import decompose_intervals


@dataclass(frozen=True)
class SolverSpec:
    name: str
    action: Action
    mode: Mode
    fn: Callable[[Election, Objective, int], SolveOutcome]
    needs_ssp: bool = True
    contiguous: bool = False


SOLVERS: dict[str, SolverSpec] = {
    s.name: s
    for s in (
        SolverSpec("cc_acp_dp", Action.ACP, Mode.CC, solve_cc_acp),
        SolverSpec("cc_aop_immune", Action.AOP, Mode.CC, solve_cc_aop, needs_ssp=False),
        SolverSpec("cc_dcp_immune", Action.DCP, Mode.CC, solve_cc_dcp, needs_ssp=False),
        SolverSpec("cc_dop_dp", Action.DOP, Mode.CC, solve_cc_dop),
        SolverSpec("ccfp_acp_contiguous", Action.ACP, Mode.CCFP, solve_ccfp_acp_contiguous, contiguous=True),
        SolverSpec("ccfp_acp_dp", Action.ACP, Mode.CCFP, solve_ccfp_acp_dp),
        SolverSpec("ccfp_aop_contiguous", Action.AOP, Mode.CCFP, solve_ccfp_aop_contiguous, contiguous=True),
        SolverSpec("ccfp_aop_dp", Action.AOP, Mode.CCFP, solve_ccfp_aop_dp),
        SolverSpec("ccfp_dcp_contiguous", Action.DCP, Mode.CCFP, solve_ccfp_dcp_contiguous, contiguous=True),
        SolverSpec("ccfp_dcp_dp", Action.DCP, Mode.CCFP, solve_ccfp_dcp_dp),
        SolverSpec("ccfp_dop_contiguous", Action.DOP, Mode.CCFP, solve_ccfp_dop_contiguous, contiguous=True),
        SolverSpec("ccfp_dop_dp", Action.DOP, Mode.CCFP, solve_ccfp_dop_dp),
    )
}


def interval_count(election: Election, objective: Objective, query: ControlQuery) -> int:
    """Coalition intervals among the parties that may run under ``query``."""
    return decompose_intervals(election, objective.coalition, can_run(election, objective, query)).q


def applicable(name: str, election: Election, objective: Objective, query: ControlQuery) -> bool:
    spec = SOLVERS[name]
    if spec.action is not query.action or spec.mode is not query.mode:
        return False
    if spec.needs_ssp and not election.is_ssp:
        return False
    if spec.contiguous and interval_count(election, objective, query) != 1:
        return False
    return True


def auto_solver(election: Election, objective: Objective, query: ControlQuery) -> str:
    if query.mode is Mode.CC and query.action is Action.AOP:
        return "cc_aop_immune"
    if query.mode is Mode.CC and query.action is Action.DCP:
        return "cc_dcp_immune"
    if not election.is_ssp:
        return "oracle"
    stem = f"{query.mode.value.lower()}_{query.action.value.lower()}"
    if query.mode is Mode.CC:
        return f"{stem}_dp"
    contiguous = f"{stem}_contiguous"
    return contiguous if applicable(contiguous, election, objective, query) else f"{stem}_dp"


def run_solver(
    name: str,
    election: Election,
    objective: Objective,
    query: ControlQuery,
    cap: int = DEFAULT_CAP,
) -> SolveOutcome:
    if name == "oracle":
        return solve_exhaustive(election, objective, query, cap)
    if name not in SOLVERS:
        raise SolverMismatch(f"unknown solver '{name}'; known: oracle, {', '.join(sorted(SOLVERS))}")
    spec = SOLVERS[name]
    if spec.action is not query.action or spec.mode is not query.mode:
        raise SolverMismatch(f"{name} solves {spec.mode.value}-{spec.action.value}, not {query.name}")
    return spec.fn(election, objective, query.k)


@dataclass
class SolveRecord:
    problem: str
    decision: bool
    witness: list[str]
    coalition_votes: int
    favored_votes: int
    total_votes: int
    phi_ok: bool
    rho_ok: bool
    solver: str
    immune: bool
    wall_seconds: float
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def dispatch_solve(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    solver: str = "auto",
    cap: int = DEFAULT_CAP,
) -> SolveRecord:
    validate_problem(election, objective, query)
    name = auto_solver(election, objective, query) if solver == "auto" else solver
    start = time.perf_counter()
    out = run_solver(name, election, objective, query, cap)
    wall = time.perf_counter() - start
    n = election.n
    phi_ok = out.coalition_votes * objective.phi.denominator >= objective.phi.numerator * n
    rho_ok = (objective.favored is None
              or out.favored_votes * objective.rho.denominator
              >= objective.rho.numerator * out.coalition_votes)
    return SolveRecord(
        query.name, out.decision, list(out.witness or ()), out.coalition_votes,
        out.favored_votes, n, phi_ok, rho_ok, out.solver, out.immune, wall, dict(out.stats),
    )


@dataclass
class CrossCheck:
    oracle: SolveOutcome
    outcomes: dict[str, SolveOutcome]
    disagreements: list[str]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def cross_check(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    solvers: Optional[list[str]] = None,
    cap: int = DEFAULT_CAP,
) -> CrossCheck:
    """Run the oracle and every applicable polynomial solver, recording mismatches."""
    truth = solve_exhaustive(election, objective, query, cap)
    names = solvers if solvers is not None else [
        s for s in SOLVERS if applicable(s, election, objective, query)
    ]
    outcomes, bad = {}, []
    for name in names:
        try:
            out = run_solver(name, election, objective, query, cap)
        except AssertionError as exc:
            bad.append(f"{name}: invalid witness ({exc})")
            continue
        outcomes[name] = out
        if out.decision != truth.decision:
            bad.append(f"{name}: said {out.decision}, oracle said {truth.decision}")
        elif out.decision and not check_outcome(election, objective, query, out):
            bad.append(f"{name}: witness {out.witness} fails re-simulation")
    return CrossCheck(truth, outcomes, bad)
