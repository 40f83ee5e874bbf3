"""Parties, voters, plurality tallies and the two chair objectives.

Everything here is an immutable value. Positions, peaks and the targets
``phi``/``rho`` are :class:`fractions.Fraction` so that every comparison on a
decision path is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


class InvalidInstance(ValueError):
    """An election, objective or query violates a model invariant."""


class TieError(InvalidInstance):
    """A voter is equidistant from two parties (peak on a divider)."""


class ActionError(ValueError):
    """A control action is not legal for the query it is applied to."""


class SolverMismatch(ValueError):
    """A named solver's preconditions do not hold for this instance."""


class Action(str, enum.Enum):
    ACP = "ACP"  # add coalition parties
    AOP = "AOP"  # add opposition parties
    DCP = "DCP"  # delete coalition parties
    DOP = "DOP"  # delete opposition parties

    @property
    def adding(self) -> bool:
        return self in (Action.ACP, Action.AOP)

    @property
    def coalition_side(self) -> bool:
        return self in (Action.ACP, Action.DCP)


class Mode(str, enum.Enum):
    CC = "CC"
    CCFP = "CCFP"


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are refused because they are rarely what was meant."""
    if isinstance(value, bool):
        raise InvalidInstance(f"not a rational: {value!r}")
    if isinstance(value, float):
        raise InvalidInstance(f"float {value!r} is not exact, pass a string like '1/3'")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"not a rational: {value!r}") from exc


@dataclass(frozen=True)
class Party:
    id: str
    position: Optional[Fraction] = None
    coalition: bool = False
    spoiler: bool = False

    def __post_init__(self):
        if self.position is not None:
            object.__setattr__(self, "position", as_fraction(self.position))


@dataclass(frozen=True)
class VoterBlock:
    """``count`` identical voters, given either an explicit order or an SSP peak."""

    count: int
    order: Optional[tuple[str, ...]] = None
    peak: Optional[Fraction] = None

    def __post_init__(self):
        if (self.order is None) == (self.peak is None):
            raise InvalidInstance("a voter block needs exactly one of order / peak")
        if self.order is not None:
            object.__setattr__(self, "order", tuple(self.order))
        else:
            object.__setattr__(self, "peak", as_fraction(self.peak))
        if not isinstance(self.count, int) or self.count < 0:
            raise InvalidInstance(f"voter count must be a nonnegative int, got {self.count!r}")


@dataclass(frozen=True)
class Election:
    """Parties plus voters. SSP iff the voters are given by peaks."""

    parties: tuple[Party, ...]
    voters: tuple[VoterBlock, ...]

    def __post_init__(self):
        parties = tuple(self.parties)
        voters = tuple(b for b in self.voters if b.count > 0)
        object.__setattr__(self, "parties", parties)
        object.__setattr__(self, "voters", voters)
        if not parties:
            raise InvalidInstance("parties: the party set is empty")
        ids = [p.id for p in parties]
        if len(set(ids)) != len(ids):
            raise InvalidInstance("parties: duplicate party id")
        if not voters:
            raise InvalidInstance("voters: n = 0")
        kinds = {b.peak is not None for b in voters}
        if len(kinds) != 1:
            raise InvalidInstance("voters: mixed peak and order blocks")
        if self.is_ssp:
            self._check_ssp()
        else:
            idset = set(ids)
            for b in voters:
                if len(b.order) != len(ids) or set(b.order) != idset:
                    raise InvalidInstance(
                        f"voters: order {b.order} is not a strict total order over {sorted(idset)}"
                    )

    def _check_ssp(self):
        seen = {}
        for p in self.parties:
            if p.position is None:
                raise InvalidInstance(f"parties: {p.id} has no position in an SSP instance")
            if not 0 <= p.position <= 1:
                raise InvalidInstance(f"parties: position of {p.id} outside [0, 1]")
            if p.position in seen:
                raise InvalidInstance(
                    f"parties: duplicate position {p.position} ({seen[p.position]}, {p.id})"
                )
            seen[p.position] = p.id
        for b in self.voters:
            if not 0 <= b.peak <= 1:
                raise InvalidInstance(f"voters: peak {b.peak} outside [0, 1]")
        self.rankings  # raises TieError for peaks on a divider

    @property
    def is_ssp(self) -> bool:
        return self.voters[0].peak is not None

    @property
    def n(self) -> int:
        return sum(b.count for b in self.voters)

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.parties)

    @cached_property
    def by_id(self) -> Mapping[str, Party]:
        return {p.id: p for p in self.parties}

    @cached_property
    def sorted_ids(self) -> tuple[str, ...]:
        """Party ids in spectrum order (SSP only)."""
        return tuple(p.id for p in sorted(self.parties, key=lambda p: p.position))

    @cached_property
    def rankings(self) -> tuple[tuple[str, ...], ...]:
        """Full preference order of every voter block, best first."""
        if not self.is_ssp:
            return tuple(b.order for b in self.voters)
        return tuple(ssp_order(b.peak, self.parties) for b in self.voters)

    @property
    def coalition(self) -> frozenset[str]:
        return frozenset(p.id for p in self.parties if p.coalition)

    @property
    def spoilers(self) -> frozenset[str]:
        return frozenset(p.id for p in self.parties if p.spoiler)


def ssp_order(peak: Fraction, parties: Iterable[Party]) -> tuple[str, ...]:
    keyed = sorted((abs(peak - p.position), p.id) for p in parties)
    for (d1, a), (d2, b) in zip(keyed, keyed[1:]):
        if d1 == d2:
            raise TieError(f"voters: peak {peak} is equidistant from {a} and {b}")
    return tuple(pid for _, pid in keyed)


@dataclass(frozen=True)
class Objective:
    coalition: frozenset[str]
    phi: Fraction
    favored: Optional[str] = None
    rho: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coalition", frozenset(self.coalition))
        object.__setattr__(self, "phi", as_fraction(self.phi))
        object.__setattr__(self, "rho", as_fraction(self.rho))
        if not self.coalition:
            raise InvalidInstance("objective: coalition is empty")
        if not 0 < self.phi <= 1:
            raise InvalidInstance(f"objective: phi = {self.phi} not in (0, 1]")
        if not 0 <= self.rho <= 1:
            raise InvalidInstance(f"objective: rho = {self.rho} not in [0, 1]")
        if (self.favored is not None) != (self.rho > 0):
            raise InvalidInstance("objective: favored party is required iff rho > 0")
        if self.favored is not None and self.favored not in self.coalition:
            raise InvalidInstance(f"objective: favored party {self.favored} not in coalition")

    @property
    def mode(self) -> Mode:
        return Mode.CCFP if self.rho > 0 else Mode.CC


@dataclass(frozen=True)
class ControlQuery:
    action: Action
    mode: Mode
    k: int

    def __post_init__(self):
        object.__setattr__(self, "action", Action(self.action))
        object.__setattr__(self, "mode", Mode(self.mode))
        if not isinstance(self.k, int) or self.k < 0:
            raise InvalidInstance(f"control: budget k must be a nonnegative int, got {self.k!r}")

    @property
    def name(self) -> str:
        return f"{self.mode.value}-{self.action.value}"


@dataclass(frozen=True)
class Tally:
    votes: Mapping[str, int]
    running: frozenset[str]
    total: int


@dataclass(frozen=True)
class ObjectiveCheck:
    coalition_ok: bool
    favored_ok: bool
    coalition_votes: int
    favored_votes: int

    @property
    def ok(self) -> bool:
        return self.coalition_ok and self.favored_ok


@dataclass(frozen=True)
class SolveOutcome:
    decision: bool
    witness: Optional[frozenset[str]]
    coalition_votes: int
    favored_votes: int
    solver: str
    immune: bool = False
    stats: Mapping[str, int] = field(default_factory=dict, compare=False)


def validate_problem(election: Election, objective: Objective, query: ControlQuery) -> None:
    """Cross-object invariants that no single constructor can see."""
    ids = set(election.ids)
    if not objective.coalition <= ids:
        raise InvalidInstance("objective: coalition names unknown parties")
    if objective.coalition != election.coalition:
        raise InvalidInstance("objective: coalition disagrees with the party coalition flags")
    if query.mode is not objective.mode:
        raise InvalidInstance(f"control: mode {query.mode.value} needs rho > 0 iff CCFP")
    if election.spoilers and not query.action.adding:
        raise InvalidInstance("parties: spoiler flags are only allowed in adding variants")
    if objective.favored is not None and objective.favored in election.spoilers:
        raise InvalidInstance("objective: the favored party must be permanent")
    if not default_running(election, query):
        raise InvalidInstance("parties: no party runs by default")


def top_party(block_index: int, running: frozenset[str], election: Election) -> str:
    if not running:
        raise ValueError("top_party: running set is empty")
    for pid in election.rankings[block_index]:
        if pid in running:
            return pid
    raise ValueError(f"top_party: running set {sorted(running)} shares no party with P")


def tally(running: Iterable[str], election: Election) -> Tally:
    running = frozenset(running)
    if not running:
        raise ValueError("tally: running set is empty")
    if not running.issubset(election.by_id):
        raise ValueError(f"tally: unknown parties {sorted(running - set(election.ids))}")
    votes = dict.fromkeys(running, 0)
    for ranking, block in zip(election.rankings, election.voters):
        for pid in ranking:
            if pid in running:
                votes[pid] += block.count
                break
    return Tally(votes, running, election.n)


def evaluate_objectives(t: Tally, objective: Objective) -> ObjectiveCheck:
    n_c = sum(v for p, v in t.votes.items() if p in objective.coalition)
    phi, rho = objective.phi, objective.rho
    coalition_ok = n_c * phi.denominator >= phi.numerator * t.total
    if rho == 0:
        return ObjectiveCheck(coalition_ok, True, n_c, 0)
    if objective.favored not in t.running:
        raise ValueError(f"favored party {objective.favored} is not running")
    n_f = t.votes[objective.favored]
    return ObjectiveCheck(coalition_ok, n_f * rho.denominator >= rho.numerator * n_c, n_c, n_f)


def accepts(objective: Objective, n: int, n_c: int, n_f: int) -> bool:
    """Membership of final (coalition votes, favored votes) in the acceptable set."""
    phi, rho = objective.phi, objective.rho
    return (
        n_c * phi.denominator >= phi.numerator * n
        and n_f * rho.denominator >= rho.numerator * n_c
    )


def default_running(election: Election, query: ControlQuery) -> frozenset[str]:
    if query.action.adding:
        return frozenset(election.ids) - election.spoilers
    return frozenset(election.ids)


def candidate_pool(election: Election, objective: Objective, query: ControlQuery) -> tuple[str, ...]:
    """Parties the chair may act on, in id order."""
    want = query.action.coalition_side
    if query.action.adding:
        pool = [p for p in election.spoilers if (p in objective.coalition) == want]
    else:
        pool = [p for p in election.ids if (p in objective.coalition) == want]
        if objective.favored is not None:
            pool = [p for p in pool if p != objective.favored]
    return tuple(sorted(pool))


def can_run(election: Election, objective: Objective, query: ControlQuery) -> frozenset[str]:
    """Every party that runs under some legal action of this query."""
    return default_running(election, query) | set(candidate_pool(election, objective, query))


def apply_action(
    election: Election, objective: Objective, query: ControlQuery, chosen: Iterable[str]
) -> frozenset[str]:
    chosen = frozenset(chosen)
    if len(chosen) > query.k:
        raise ActionError(f"budget exceeded: |K| = {len(chosen)} > k = {query.k}")
    want = query.action.coalition_side
    for pid in chosen:
        if pid not in election.by_id:
            raise ActionError(f"unknown party {pid}")
        if (pid in objective.coalition) != want:
            side = "coalition" if want else "opposition"
            raise ActionError(f"side mismatch: {pid} is not a {side} party ({query.name})")
    if query.action.adding:
        if not chosen <= election.spoilers:
            raise ActionError(f"only spoilers can be added: {sorted(chosen - election.spoilers)}")
        return default_running(election, query) | chosen
    if objective.favored is not None and objective.favored in chosen:
        raise ActionError(f"the favored party {objective.favored} cannot be deleted")
    running = frozenset(election.ids) - chosen
    if not running:
        raise ActionError("deleting every party leaves no running set")
    return running


def simulate(
    election: Election, objective: Objective, query: ControlQuery, chosen: Iterable[str]
) -> ObjectiveCheck:
    return evaluate_objectives(
        tally(apply_action(election, objective, query, chosen), election), objective
    )


def check_outcome(
    election: Election, objective: Objective, query: ControlQuery, outcome: SolveOutcome
) -> bool:
    """Re-simulate a yes-witness; a no-answer is trivially consistent."""
    if not outcome.decision:
        return outcome.witness is None
    if outcome.witness is None or len(outcome.witness) > query.k:
        return False
    try:
        return simulate(election, objective, query, outcome.witness).ok
    except ActionError:
        return False


def finish(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    witness: Optional[Sequence[str]],
    solver: str,
    immune: bool = False,
    stats: Optional[Mapping[str, int]] = None,
) -> SolveOutcome:
    """Build an outcome by re-simulating ``witness`` (``None`` means no)."""
    if witness is None:
        check = simulate(election, objective, query, ())
        return SolveOutcome(False, None, check.coalition_votes, check.favored_votes,
                            solver, immune, dict(stats or {}))
    check = simulate(election, objective, query, witness)
    if not check.ok:
        raise AssertionError(f"{solver}: witness {sorted(witness)} does not satisfy the objectives")
    return SolveOutcome(True, frozenset(witness), check.coalition_votes, check.favored_votes,
                        solver, immune, dict(stats or {}))
