"""Plurality election control for a coalition, with exact solvers for single-peaked voters."""

from .dispatch import SOLVERS, auto_solver, cross_check, dispatch_solve, run_solver
from .instances import GenParams, emit_instance, generate_random, load_instance, parse_instance, random_problem
from .model import (
    Action,
    ActionError,
    ControlQuery,
    Election,
    InvalidInstance,
    Mode,
    Objective,
    Party,
    SolveOutcome,
    SolverMismatch,
    TieError,
    VoterBlock,
    simulate,
    tally,
)
from .oracle import CapacityError, solve_exhaustive, verify_immunity

__all__ = [
    "Action", "ActionError", "CapacityError", "ControlQuery", "Election", "GenParams",
    "InvalidInstance", "Mode", "Objective", "Party", "SOLVERS", "SolveOutcome", "SolverMismatch",
    "TieError", "VoterBlock", "auto_solver", "cross_check", "dispatch_solve", "emit_instance",
    "generate_random", "load_instance", "parse_instance", "random_problem", "run_solver",
    "simulate", "solve_exhaustive", "tally", "verify_immunity",
]
