from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import ssp_elections
from coalition_control import Election, InvalidInstance, Party, TieError, VoterBlock, tally
from coalition_control.model import ssp_order
from coalition_control.ssp import (
    CompactProfile,
    band_of,
    build_structure,
    compact_from_extensive,
    decompose_intervals,
    dividers,
    election_from_compact,
    extensive_from_compact,
)


def positioned(*specs):
    """Parties from (id, position, coalition) triples."""
    return tuple(Party(i, F(p), c) for i, p, c in specs)


def test_two_party_structure():
    e = Election(positioned(("a", "1/5", True), ("b", "3/5", False)), (VoterBlock(1, peak=0),))
    ds, bands = build_structure(e)
    assert ds == [0, F(2, 5), 1]
    assert [b.order for b in bands] == [("a", "b"), ("b", "a")]


def test_three_party_orders():
    e = Election(positioned(("x", 0, True), ("y", "1/2", False), ("z", 1, False)),
                 (VoterBlock(1, peak="1/8"),))
    ds, bands = build_structure(e)
    assert ds == [0, F(1, 4), F(1, 2), F(3, 4), 1]
    assert [b.order for b in bands] == [
        ("x", "y", "z"), ("y", "x", "z"), ("y", "z", "x"), ("z", "y", "x"),
    ]


def test_band_count_bound():
    ps = [F(i, 11) for i in range(1, 8)]
    m = len(ps)
    assert len(dividers(ps)) - 1 <= m * (m + 1) // 2 + 1


def test_band_of_edges_and_ties():
    ds = [F(0), F(2, 5), F(1)]
    assert band_of(F(0), ds) == 0 and band_of(F(1), ds) == 1
    assert band_of(F(1, 10), ds) == 0
    with pytest.raises(TieError):
        band_of(F(2, 5), ds)


def test_compact_counts_one_band():
    e = Election(positioned(("a", "1/5", True), ("b", "3/5", False)), (VoterBlock(3, peak="1/10"),))
    assert compact_from_extensive(e) == CompactProfile((3, 0))


def test_compact_needs_matching_band_count():
    e = Election(positioned(("a", "1/5", True), ("b", "3/5", False)), (VoterBlock(3, peak="1/10"),))
    _, bands = build_structure(e)
    with pytest.raises(InvalidInstance):
        extensive_from_compact(CompactProfile((1, 2, 3)), bands)
    with pytest.raises(InvalidInstance):
        election_from_compact(e.parties, [1, 2, 3])


def test_decompose_contiguous_and_split():
    e = Election(positioned(("a", "1/10", True), ("b", "1/5", True), ("o", "1/2", False)),
                 (VoterBlock(1, peak=0),))
    dec = decompose_intervals(e, {"a", "b"})
    assert dec.q == 1 and dec.coalition == (("a", "b"),) and dec.opposition == ((), ("o",))
    e2 = Election(positioned(("a", "1/10", True), ("o", "1/2", False), ("b", "9/10", True)),
                  (VoterBlock(1, peak=0),))
    dec2 = decompose_intervals(e2, {"a", "b"})
    assert dec2.q == 2 and dec2.opposition == ((), ("o",), ())
    assert dec2.coalition_index("b") == 1 and dec2.opposition_index("o") == 1


def test_decompose_all_coalition():
    e = Election(positioned(("a", 0, True), ("b", 1, True)), (VoterBlock(1, peak=0),))
    dec = decompose_intervals(e, {"a", "b"})
    assert dec.q == 1 and all(run == () for run in dec.opposition)


def test_decompose_over_subset_merges_runs():
    e = Election(positioned(("a", "1/10", True), ("o", "1/2", False), ("b", "9/10", True)),
                 (VoterBlock(1, peak=0),))
    assert decompose_intervals(e, {"a", "b"}, {"a", "b"}).q == 1


@settings(max_examples=150, deadline=None)
@given(ssp_elections(max_m=5, coalition=False))
def test_compact_round_trip_keeps_every_tally(election):
    ds, bands = build_structure(election)
    rebuilt = Election(election.parties, tuple(extensive_from_compact(compact_from_extensive(election), bands)))
    ids = election.ids
    for r in range(1, len(ids) + 1):
        for running in combinations(ids, r):
            assert tally(running, election).votes == tally(running, rebuilt).votes


@settings(max_examples=300, deadline=None)
@given(ssp_elections(min_m=2, coalition=False), st.integers(0, 10_000))
def test_divider_rule_decides_pairwise_preference(election, x):
    peak = F(x, 10_000)
    ds = set(dividers(p.position for p in election.parties))
    if peak in ds and 0 < peak < 1:
        return
    order = ssp_order(peak, election.parties)
    pos = {p.id: p.position for p in election.parties}
    for a, b in combinations(election.ids, 2):
        lo, hi = sorted((a, b), key=pos.get)
        assert (order.index(lo) < order.index(hi)) == (peak < (pos[lo] + pos[hi]) / 2)


@settings(max_examples=150, deadline=None)
@given(ssp_elections(coalition=False), st.data())
def test_peaks_in_one_band_share_an_order(election, data):
    ds, bands = build_structure(election)
    i = data.draw(st.integers(0, len(bands) - 1))
    band = bands[i]
    t = data.draw(st.fractions(0, 1).filter(lambda t: 0 < t < 1))
    assert ssp_order(band.lo + t * (band.hi - band.lo), election.parties) == band.order
