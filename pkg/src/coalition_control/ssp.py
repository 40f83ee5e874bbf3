"""Dividers, bands, compact profiles and the coalition/opposition interval split."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .model import Election, InvalidInstance, Party, TieError, VoterBlock, ssp_order


@dataclass(frozen=True)
class Band:
    lo: Fraction
    hi: Fraction
    order: tuple[str, ...]

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class CompactProfile:
    counts: tuple[int, ...]  # indexed by band

    @property
    def n(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class IntervalDecomposition:
    """Maximal same-side runs along the spectrum.

    ``opposition`` has ``len(coalition) + 1`` entries: the left flank, one gap
    between each pair of consecutive coalition runs, and the right flank. Flanks
    may be empty, gaps never are.
    """

    coalition: tuple[tuple[str, ...], ...]
    opposition: tuple[tuple[str, ...], ...]

    @property
    def q(self) -> int:
        return len(self.coalition)

    def coalition_index(self, pid: str) -> int:
        for i, run in enumerate(self.coalition):
            if pid in run:
                return i
        raise KeyError(pid)

    def opposition_index(self, pid: str) -> int:
        for i, run in enumerate(self.opposition):
            if pid in run:
                return i
        raise KeyError(pid)


def dividers(positions: Iterable[Fraction]) -> list[Fraction]:
    positions = list(positions)
    ds = {(a + b) / 2 for a, b in combinations(positions, 2)}
    ds.update((Fraction(0), Fraction(1)))
    return sorted(ds)


def build_structure(election: Election) -> tuple[list[Fraction], list[Band]]:
    if not election.is_ssp:
        raise InvalidInstance("band structure needs an SSP instance")
    ds = dividers(p.position for p in election.parties)
    bands = []
    for lo, hi in zip(ds, ds[1:]):
        bands.append(Band(lo, hi, ssp_order((lo + hi) / 2, election.parties)))
    return ds, bands


def band_of(peak: Fraction, ds: Sequence[Fraction]) -> int:
    """Index of the open band holding ``peak``; 0 and 1 belong to the end bands."""
    if peak == ds[0]:
        return 0
    if peak == ds[-1]:
        return len(ds) - 2
    i = bisect_left(ds, peak)
    if i < len(ds) and ds[i] == peak:
        raise TieError(f"peak {peak} lies on a divider")
    return i - 1


def compact_from_extensive(election: Election) -> CompactProfile:
    ds, bands = build_structure(election)
    counts = [0] * len(bands)
    for block in election.voters:
        counts[band_of(block.peak, ds)] += block.count
    return CompactProfile(tuple(counts))


def extensive_from_compact(profile: CompactProfile, bands: Sequence[Band]) -> list[VoterBlock]:
    if len(profile.counts) != len(bands):
        raise InvalidInstance(
            f"compact profile has {len(profile.counts)} counts for {len(bands)} bands"
        )
    return [VoterBlock(c, peak=b.midpoint) for c, b in zip(profile.counts, bands) if c > 0]


def election_from_compact(parties: Sequence[Party], counts: Sequence[int]) -> Election:
    if any(p.position is None for p in parties):
        raise InvalidInstance("compact_bands needs positioned parties")
    ds = dividers(p.position for p in parties)
    nbands = len(ds) - 1
    if len(counts) > nbands:
        raise InvalidInstance(f"compact_bands: band index >= band count {nbands}")
    counts = list(counts) + [0] * (nbands - len(counts))
    voters = [VoterBlock(c, peak=(lo + hi) / 2) for c, lo, hi in zip(counts, ds, ds[1:]) if c > 0]
    return Election(tuple(parties), tuple(voters))


def decompose_intervals(
    election: Election, coalition: Iterable[str], parties: Optional[Iterable[str]] = None
) -> IntervalDecomposition:
    """Split ``parties`` (default: all of P) into maximal coalition/opposition runs."""
    coalition = frozenset(coalition)
    if not coalition:
        raise InvalidInstance("decompose_intervals: empty coalition")
    keep = frozenset(parties) if parties is not None else frozenset(election.ids)
    line = [pid for pid in election.sorted_ids if pid in keep]
    coal_runs: list[tuple[str, ...]] = []
    opp_runs: list[tuple[str, ...]] = []
    current: list[str] = []
    on_coalition = False
    for pid in line:
        side = pid in coalition
        if side != on_coalition:
            (coal_runs if on_coalition else opp_runs).append(tuple(current))
            current = []
            on_coalition = side
        current.append(pid)
    (coal_runs if on_coalition else opp_runs).append(tuple(current))
    if on_coalition:
        opp_runs.append(())  # empty right flank
    return IntervalDecomposition(tuple(coal_runs), tuple(opp_runs))
