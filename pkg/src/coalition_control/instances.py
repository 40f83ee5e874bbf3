"""JSON instance files and seeded random instances.

A file is one JSON document::

    {
      "schema": 1,
      "parties": [{"id": "a", "position": "1/5", "coalition": true, "spoiler": false}, ...],
      "voters": {"ssp_peaks": [{"peak": "21/100", "count": 2}, ...]},
      "objective": {"phi": "2/3", "rho": "0", "favored": null},
      "control": {"action": "ACP", "mode": "CC", "k": 1}
    }

``voters`` holds exactly one of ``extensive`` (``order`` + ``count``),
``ssp_peaks`` (``peak`` + ``count``) or ``compact_bands`` (``band`` + ``count``,
bands indexed by ascending left divider). Rationals are strings such as
``"3/7"`` or ``"0.25"``; JSON decimals are read exactly as well.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .model import (
    Action,
    ControlQuery,
    Election,
    InvalidInstance,
    Mode,
    Objective,
    Party,
    TieError,
    VoterBlock,
    as_fraction,
    validate_problem,
)
from .ssp import dividers, election_from_compact

SCHEMA_VERSION = 1
Problem = tuple[Election, Objective, ControlQuery]


def _rat(x: Fraction) -> str:
    return str(x)


def to_dict(election: Election, objective: Objective, query: ControlQuery) -> dict:
    parties = []
    for p in election.parties:
        entry = {"id": p.id}
        if p.position is not None:
            entry["position"] = _rat(p.position)
        entry["coalition"] = p.coalition
        entry["spoiler"] = p.spoiler
        parties.append(entry)
    if election.is_ssp:
        voters = {"ssp_peaks": [{"peak": _rat(b.peak), "count": b.count} for b in election.voters]}
    else:
        voters = {"extensive": [{"order": list(b.order), "count": b.count} for b in election.voters]}
    return {
        "schema": SCHEMA_VERSION,
        "parties": parties,
        "voters": voters,
        "objective": {
            "phi": _rat(objective.phi),
            "rho": _rat(objective.rho),
            "favored": objective.favored,
        },
        "control": {"action": query.action.value, "mode": query.mode.value, "k": query.k},
    }


def emit_instance(election: Election, objective: Objective, query: ControlQuery) -> str:
    return json.dumps(to_dict(election, objective, query), indent=2) + "\n"


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInstance(f"{where}: missing field '{key}'")
    return obj[key]


def from_dict(doc: dict) -> Problem:
    if not isinstance(doc, dict):
        raise InvalidInstance("instance: top level must be an object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise InvalidInstance(f"schema: unsupported version {schema!r}")

    raw_parties = _field(doc, "parties", "instance")
    if not isinstance(raw_parties, list):
        raise InvalidInstance("parties: must be a list")
    parties = []
    for i, rp in enumerate(raw_parties):
        where = f"parties[{i}]"
        pid = _field(rp, "id", where)
        if not isinstance(pid, str) or not pid:
            raise InvalidInstance(f"{where}.id: must be a nonempty string")
        pos = rp.get("position")
        try:
            parties.append(Party(
                pid,
                None if pos is None else as_fraction(pos),
                bool(rp.get("coalition", False)),
                bool(rp.get("spoiler", False)),
            ))
        except InvalidInstance as exc:
            raise InvalidInstance(f"{where}.position: {exc}") from exc

    voters = _field(doc, "voters", "instance")
    if not isinstance(voters, dict) or len(voters) != 1:
        raise InvalidInstance(
            "voters: exactly one of extensive / ssp_peaks / compact_bands is required"
        )
    (kind, blocks), = voters.items()
    if not isinstance(blocks, list):
        raise InvalidInstance(f"voters.{kind}: must be a list")
    if kind == "extensive":
        election = Election(tuple(parties), tuple(
            VoterBlock(_count(b, f"voters.extensive[{i}]"), order=tuple(_field(b, "order", f"voters.extensive[{i}]")))
            for i, b in enumerate(blocks)
        ))
    elif kind == "ssp_peaks":
        election = Election(tuple(parties), tuple(
            VoterBlock(_count(b, f"voters.ssp_peaks[{i}]"), peak=as_fraction(_field(b, "peak", f"voters.ssp_peaks[{i}]")))
            for i, b in enumerate(blocks)
        ))
    elif kind == "compact_bands":
        counts: dict[int, int] = {}
        for i, b in enumerate(blocks):
            where = f"voters.compact_bands[{i}]"
            band = _field(b, "band", where)
            if not isinstance(band, int) or band < 0:
                raise InvalidInstance(f"{where}.band: must be a nonnegative int")
            counts[band] = counts.get(band, 0) + _count(b, where)
        dense = [0] * (max(counts, default=-1) + 1)
        for band, c in counts.items():
            dense[band] = c
        election = election_from_compact(parties, dense)
    else:
        raise InvalidInstance(f"voters: unknown representation '{kind}'")

    obj = _field(doc, "objective", "instance")
    favored = obj.get("favored")
    objective = Objective(
        election.coalition,
        as_fraction(_field(obj, "phi", "objective")),
        favored,
        as_fraction(obj.get("rho", "0")),
    )
    ctl = _field(doc, "control", "instance")
    try:
        query = ControlQuery(Action(_field(ctl, "action", "control")),
                             Mode(_field(ctl, "mode", "control")),
                             _field(ctl, "k", "control"))
    except ValueError as exc:
        raise InvalidInstance(f"control: {exc}") from exc
    validate_problem(election, objective, query)
    return election, objective, query


def _count(block, where: str) -> int:
    c = _field(block, "count", where)
    if not isinstance(c, int) or isinstance(c, bool) or c < 0:
        raise InvalidInstance(f"{where}.count: must be a nonnegative int")
    return c


def parse_instance(text: str) -> Problem:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"malformed JSON: {exc}") from exc
    return from_dict(doc)


def load_instance(path) -> Problem:
    return parse_instance(Path(path).read_text())


@dataclass(frozen=True)
class GenParams:
    kind: str = "ssp"  # "ssp" or "general"
    m: int = 6
    n: int = 20
    k: int = 2
    action: Optional[str] = None
    mode: Optional[str] = None
    coalition_density: float = 0.5
    spoiler_density: float = 0.4
    q_target: Optional[int] = None
    seed: int = 0


def _sides(rng: random.Random, p: GenParams) -> list[bool]:
    """Coalition flags in spectrum order."""
    m = p.m
    if p.q_target is None:
        sides = [rng.random() < p.coalition_density for _ in range(m)]
        if not any(sides):
            sides[rng.randrange(m)] = True
        return sides
    q = p.q_target
    if q < 1 or m < 2 * q - 1:
        raise InvalidInstance(f"generate: q_target = {q} needs at least {2 * q - 1} parties, m = {m}")
    c = min(max(round(p.coalition_density * m), q), m - (q - 1))
    o = m - c
    cuts = sorted(rng.sample(range(1, c), q - 1))
    coal = [b - a for a, b in zip([0] + cuts, cuts + [c])]
    opp = [0] + [1] * (q - 1) + [0]
    for _ in range(o - (q - 1)):
        opp[rng.randrange(q + 1)] += 1
    sides = [False] * opp[0]
    for run, gap in zip(coal, opp[1:]):
        sides += [True] * run + [False] * gap
    return sides


def random_problem(p: GenParams) -> Problem:
    """Seeded random instance; identical params give an identical problem."""
    if p.m < 1 or p.n < 1 or p.k < 0:
        raise InvalidInstance("generate: m, n must be positive and k nonnegative")
    rng = random.Random(p.seed)
    action = Action(p.action) if p.action else rng.choice(list(Action))
    mode = Mode(p.mode) if p.mode else rng.choice(list(Mode))
    sides = _sides(rng, p)
    labels = [f"p{i + 1}" for i in range(p.m)]
    rng.shuffle(labels)

    grid = 16 * p.m
    positions = sorted(Fraction(x, grid) for x in rng.sample(range(grid + 1), p.m))
    spoiler = [False] * p.m
    if action.adding:
        spoiler = [rng.random() < p.spoiler_density for _ in range(p.m)]
    favored_idx = None
    if mode is Mode.CCFP:
        favored_idx = rng.choice([i for i, s in enumerate(sides) if s])
        spoiler[favored_idx] = False
    if all(spoiler):
        spoiler[rng.randrange(p.m)] = False

    parties = tuple(
        Party(labels[i], positions[i] if p.kind == "ssp" else None, sides[i], spoiler[i])
        for i in range(p.m)
    )
    if p.kind == "ssp":
        ds = set(dividers(positions))
        peaks: dict[Fraction, int] = {}
        for _ in range(p.n):
            while True:
                peak = Fraction(rng.randrange(1001), 1000)
                if peak not in ds or peak in (0, 1):
                    break
            peaks[peak] = peaks.get(peak, 0) + 1
        voters = tuple(VoterBlock(c, peak=h) for h, c in sorted(peaks.items()))
    elif p.kind == "general":
        orders: dict[tuple[str, ...], int] = {}
        for _ in range(p.n):
            order = list(labels)
            rng.shuffle(order)
            orders[tuple(order)] = orders.get(tuple(order), 0) + 1
        voters = tuple(VoterBlock(c, order=o) for o, c in orders.items())
    else:
        raise InvalidInstance(f"generate: unknown kind {p.kind!r}")
    try:
        election = Election(parties, voters)
    except TieError:  # pragma: no cover - peaks avoid dividers by construction
        raise
    phi = Fraction(rng.randint(1, p.n), p.n)
    if mode is Mode.CCFP:
        objective = Objective(election.coalition, phi, labels[favored_idx],
                              Fraction(rng.randint(1, 20), 20))
    else:
        objective = Objective(election.coalition, phi)
    query = ControlQuery(action, mode, p.k)
    validate_problem(election, objective, query)
    return election, objective, query


def generate_random(p: GenParams) -> str:
    return emit_instance(*random_problem(p))
