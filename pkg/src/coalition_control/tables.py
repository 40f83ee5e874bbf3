"""Per-interval option tables and the two ways of combining them across intervals.

An option is an action set confined to one interval together with the change
it causes in (coalition votes, favored votes) relative to the uncontrolled
running set. The interval-independence lemmas make these changes additive
across intervals, so the combined totals are baseline plus the sum of deltas.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import (
    ActionError,
    ControlQuery,
    Election,
    Objective,
    SolveOutcome,
    accepts,
    apply_action,
    finish,
    tally,
)

Pair = tuple[int, int]
Options = dict[Pair, tuple[int, tuple[str, ...]]]


def counts(election: Election, objective: Objective, running: frozenset[str]) -> Pair:
    votes = tally(running, election).votes
    n_c = sum(v for p, v in votes.items() if p in objective.coalition)
    n_f = votes.get(objective.favored, 0) if objective.favored is not None else 0
    return n_c, n_f


def baseline(election: Election, objective: Objective, query: ControlQuery) -> Pair:
    return counts(election, objective, apply_action(election, objective, query, ()))


def option_table(
    election: Election,
    objective: Objective,
    query: ControlQuery,
    candidates: Iterable[tuple[str, ...]],
) -> Options:
    """Map each reachable delta pair to the smallest action set realizing it.

    ``candidates`` should arrive in (size, ids) order so the first hit is canonical.
    """
    base = baseline(election, objective, query)
    table: Options = {}
    for chosen in candidates:
        try:
            running = apply_action(election, objective, query, chosen)
        except ActionError:
            continue
        n_c, n_f = counts(election, objective, running)
        key = (n_c - base[0], n_f - base[1])
        old = table.get(key)
        if old is None or len(chosen) < old[0]:
            table[key] = (len(chosen), tuple(chosen))
    return table


def combine_reachable(tables: Sequence[Options], k: int) -> tuple[Options, int]:
    """Reachable summed deltas over all intervals with total size <= k.

    Each state keeps the least budget that reaches it, which answers every
    "reachable with at most k' actions" query at once. Returns the final
    states and the total number of stored entries over all prefixes.
    """
    states: Options = {(0, 0): (0, ())}
    entries = 1
    for table in tables:
        nxt: Options = {}
        for (c1, f1), (b1, k1) in states.items():
            for (c2, f2), (b2, k2) in table.items():
                b = b1 + b2
                if b > k:
                    continue
                key = (c1 + c2, f1 + f2)
                old = nxt.get(key)
                if old is None or b < old[0]:
                    nxt[key] = (b, k1 + k2)
        states = nxt
        entries += len(states)
    return states, entries


def best_gain_by_budget(table: Options, k: int) -> list[tuple[int, tuple[str, ...]]]:
    """For b = 0..k, the largest coalition delta using at most b actions."""
    out = []
    for b in range(k + 1):
        best = None
        for (dc, _), (size, chosen) in table.items():
            if size <= b and (best is None or dc > best[0]):
                best = (dc, chosen)
        out.append(best if best is not None else (0, ()))
    return out


def combine_max(gains: Sequence[Sequence[tuple[int, tuple[str, ...]]]], k: int):
    """Max-plus DP: best total gain over interval prefixes with budget <= k.

    ``gains[j][b]`` is the best gain of interval j with at most b actions.
    Returns (best gain, action set, table entry count).
    """
    best = [(0, ())] * (k + 1)
    entries = k + 1
    for row in gains:
        new = []
        for kk in range(k + 1):
            choice = None
            for i in range(kk + 1):
                gain = row[i][0] + best[kk - i][0]
                if choice is None or gain > choice[0]:
                    choice = (gain, best[kk - i][1] + row[i][1])
            new.append(choice)
        best = new
        entries += k + 1
    return best[k][0], best[k][1], entries


def solve_by_reachability(election, objective, query, tables, name, q) -> SolveOutcome:
    """Combine option tables and return the first accepted final state, re-simulated."""
    base = baseline(election, objective, query)
    states, entries = combine_reachable(tables, query.k)
    witness = None
    for (dc, df), (b, chosen) in sorted(states.items(), key=lambda kv: (kv[1][0], kv[1][1])):
        if accepts(objective, election.n, base[0] + dc, base[1] + df):
            witness = chosen
            predicted = (base[0] + dc, base[1] + df)
            break
    out = finish(election, objective, query, witness, name,
                 stats={"table_entries": entries, "q": q})
    if witness is not None and (out.coalition_votes, out.favored_votes) != predicted:
        raise AssertionError(f"{name}: interval deltas are not additive")
    return out
