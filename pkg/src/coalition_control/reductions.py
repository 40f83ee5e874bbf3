"""Hardness gadgets: map dominating set, clique and subset sum to control instances.

Each constructor returns a :class:`Gadget` holding a complete problem plus a
map from gadget parties back to source elements, so small instances can be
checked end to end against the brute-force source checkers at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Optional

from .model import (
    Action,
    ControlQuery,
    Election,
    Mode,
    Objective,
    Party,
    VoterBlock,
    validate_problem,
)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[Hashable, ...]
    edges: frozenset[frozenset]

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Iterable[Hashable]]):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("graph: duplicate vertex")
        es = set()
        for e in edges:
            pair = frozenset(e)
            if len(pair) != 2:
                raise ValueError(f"graph: {tuple(e)} is a self-loop or not a pair")
            if not pair <= set(vertices):
                raise ValueError(f"graph: edge {tuple(e)} names an unknown vertex")
            es.add(pair)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(es))

    def closed_neighborhood(self, v) -> set:
        return {v} | {u for e in self.edges if v in e for u in e}


@dataclass(frozen=True)
class SubsetSumInstance:
    values: tuple[int, ...]
    target: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values or any(not isinstance(a, int) or a <= 0 for a in self.values):
            raise ValueError("subset sum: values must be a nonempty list of positive ints")
        if not isinstance(self.target, int) or self.target <= 0:
            raise ValueError("subset sum: target must be a positive int")
        if not 0 <= self.k <= len(self.values):
            raise ValueError("subset sum: k must lie in [0, |A|]")


@dataclass(frozen=True)
class Gadget:
    election: Election
    objective: Objective
    query: ControlQuery
    origin: dict[str, Hashable] = field(default_factory=dict, compare=False)
    note: str = ""

    @property
    def problem(self) -> tuple[Election, Objective, ControlQuery]:
        return self.election, self.objective, self.query


def _vertex_parties(graph: Graph) -> tuple[list[str], dict]:
    ids = [f"s{i + 1}" for i in range(len(graph.vertices))]
    return ids, dict(zip(graph.vertices, ids))


def _build(parties, voters, objective_args, action, mode, k, origin, note="") -> Gadget:
    election = Election(tuple(parties), tuple(voters))
    objective = Objective(election.coalition, *objective_args)
    query = ControlQuery(action, mode, k)
    validate_problem(election, objective, query)
    return Gadget(election, objective, query, origin, note)


def dominating_set_gadget(graph: Graph, k: int, target: str = "CC-ACP") -> Gadget:
    """Spoiler per vertex; a voter per vertex ranks its closed neighborhood first.

    CC-ACP: the spoilers are coalition parties and the coalition reaches half
    the votes iff the added spoilers dominate the graph. CCFP-AOP: the spoilers
    are opposition parties and the favored party reaches half of the coalition
    iff they dominate.
    """
    if not graph.vertices:
        raise ValueError("dominating set gadget: the graph is empty")
    ids, pid = _vertex_parties(graph)
    n = len(ids)

    def neighborhood_order(v) -> tuple[str, ...]:
        near = sorted(graph.closed_neighborhood(v), key=graph.vertices.index)
        head = [pid[u] for u in near]
        return tuple(head) + ("p2", "p1") + tuple(s for s in ids if s not in head)

    origin = {pid[v]: v for v in graph.vertices}
    if target == "CC-ACP":
        parties = [Party("p1", coalition=True), Party("p2")]
        parties += [Party(s, coalition=True, spoiler=True) for s in ids]
        voters = [VoterBlock(1, order=neighborhood_order(v)) for v in graph.vertices]
        voters.append(VoterBlock(n, order=("p2", "p1", *ids)))
        return _build(parties, voters, (Fraction(1, 2),), Action.ACP, Mode.CC, k, origin)
    if target == "CCFP-AOP":
        parties = [Party("p1", coalition=True), Party("p2", coalition=True)]
        parties += [Party(s, spoiler=True) for s in ids]
        # an even split of the first block needs an even count, so odd graphs
        # get every voter doubled; all thresholds are ratios and stay put
        scale = 1 if n % 2 == 0 else 2
        half = scale * n // 2
        voters = [
            VoterBlock(half, order=("p1", "p2", *ids)),
            VoterBlock(half, order=("p2", "p1", *ids)),
        ]
        voters += [VoterBlock(scale, order=neighborhood_order(v)) for v in graph.vertices]
        note = "voters doubled for odd vertex count" if scale == 2 else ""
        return _build(parties, voters, (Fraction(1, 2), "p1", Fraction(1, 2)),
                      Action.AOP, Mode.CCFP, k, origin, note)
    raise ValueError(f"dominating set gadget: unsupported target {target}")


def _general_no(action: Action, mode: Mode, note: str) -> Gadget:
    parties = [Party("p1", coalition=True), Party("o1")]
    voters = [VoterBlock(1, order=("o1", "p1"))]
    args = (Fraction(1), "p1", Fraction(1, 2)) if mode is Mode.CCFP else (Fraction(1),)
    # k = 0 so that deleting o1 cannot rescue the coalition
    return _build(parties, voters, args, action, mode, 0, {}, note)


def clique_gadget(graph: Graph, k: int, target: str = "CC-DOP") -> Gadget:
    """Party per vertex and a voter per edge ranking both endpoints first.

    A voter reaches p1 only when both endpoints of its edge are deleted. The
    thresholds count k*k edges for a k-clique, as in the source construction;
    with that count no k deletions can ever succeed, see :func:`has_dense_k_set`.
    """
    if not graph.edges:
        raise ValueError("clique gadget: the graph has no edges (m = 0)")
    if k < 1:
        raise ValueError("clique gadget: k must be at least 1")
    ids, pid = _vertex_parties(graph)
    m = len(graph.edges)
    origin = {pid[v]: v for v in graph.vertices}
    edge_orders = []
    for e in sorted(graph.edges, key=lambda e: sorted(graph.vertices.index(v) for v in e)):
        x, y = sorted(e, key=graph.vertices.index)
        edge_orders.append((pid[x], pid[y]))

    if target == "CC-DOP":
        phi = Fraction(k * k, m)
        if phi > 1:
            return _general_no(Action.DOP, Mode.CC, f"phi = {phi} > 1")
        parties = [Party("p1", coalition=True)] + [Party(s) for s in ids]
        voters = [
            VoterBlock(1, order=(sx, sy, "p1", *(s for s in ids if s not in (sx, sy))))
            for sx, sy in edge_orders
        ]
        return _build(parties, voters, (phi,), Action.DOP, Mode.CC, k, origin)
    if target == "CCFP-DCP":
        rho = Fraction(m + k * k, 2 * m)
        if rho > 1:
            return _general_no(Action.DCP, Mode.CCFP, f"rho = {rho} > 1")
        parties = [Party("p1", coalition=True), Party("p2")]
        parties += [Party(s, coalition=True) for s in ids]
        voters = [
            VoterBlock(1, order=(sx, sy, "p1", "p2", *(s for s in ids if s not in (sx, sy))))
            for sx, sy in edge_orders
        ]
        voters.append(VoterBlock(m, order=("p1", "p2", *ids)))
        voters.append(VoterBlock(2 * m, order=("p2", "p1", *ids)))
        return _build(parties, voters, (Fraction(1, 2), "p1", rho), Action.DCP, Mode.CCFP, k, origin)
    raise ValueError(f"clique gadget: unsupported target {target}")


SUBSET_SUM_TARGETS = ("CCFP-ACP", "CCFP-AOP", "CCFP-DCP", "CCFP-DOP")


def _trivial_ssp(action: Action, yes: bool, note: str) -> Gadget:
    """Two parties, one voter, no budget; the favored party wins the voter iff ``yes``."""
    parties = [Party("p1", Fraction(1, 4), coalition=True), Party("o1", Fraction(3, 4))]
    peak = Fraction(1, 8) if yes else Fraction(7, 8)
    return _build(parties, [VoterBlock(1, peak=peak)], (Fraction(1), "p1", Fraction(1, 2)),
                  action, Mode.CCFP, 0, {}, note)


def subset_sum_gadget(ssi: SubsetSumInstance, target: str = "CCFP-ACP") -> Gadget:
    """Pair (b_i, s_i) per value on the line, the favored party isolated on the left.

    Value a_i is a block of a_i voters next to one member of pair i; acting on
    pair i moves exactly that block across sides. The favored party's block
    is fixed, so both thresholds together force a moved total of exactly the
    target.
    """
    if target not in SUBSET_SUM_TARGETS:
        raise ValueError(f"subset sum gadget: unsupported target {target}")
    action = Action(target.split("-")[1])
    total = sum(ssi.values)
    if total < ssi.target:
        return _trivial_ssp(action, False, "sum of values below target")
    # acting on a side leaves the favored party facing the complement of the target
    complement = action in (Action.AOP, Action.DCP)
    fixed = total - ssi.target if complement else ssi.target
    if fixed == 0:
        # only the whole set sums to the target
        return _trivial_ssp(action, len(ssi.values) <= ssi.k, "target equals the sum")

    m = len(ssi.values)
    unit = Fraction(1, 4 * (m + 1))
    offset = unit / 8  # dividers are multiples of unit/4, so peaks stay off them
    b_pos = [(4 * i + 1) * unit for i in range(1, m + 1)]
    s_pos = [(4 * i + 2) * unit for i in range(1, m + 1)]
    b_coal = action in (Action.AOP, Action.DCP)
    parties = [Party("p1", unit / 2, coalition=True)]
    origin = {}
    for i in range(m):
        spoiler_b = False
        spoiler_s = action.adding
        parties.append(Party(f"b{i + 1}", b_pos[i], coalition=b_coal, spoiler=spoiler_b))
        parties.append(Party(f"s{i + 1}", s_pos[i], coalition=not b_coal, spoiler=spoiler_s))
        origin[f"b{i + 1}"] = origin[f"s{i + 1}"] = i
    peaks_at = s_pos if action.adding else b_pos
    voters = [VoterBlock(fixed, peak=unit / 2 + offset)]
    voters += [VoterBlock(a, peak=peaks_at[i] + offset) for i, a in enumerate(ssi.values)]
    phi = Fraction(2 * fixed, fixed + total)
    return _build(parties, voters, (phi, "p1", Fraction(1, 2)), action, Mode.CCFP, ssi.k, origin)


def has_dominating_set(graph: Graph, k: int) -> Optional[tuple]:
    for size in range(min(k, len(graph.vertices)) + 1):
        for chosen in combinations(graph.vertices, size):
            covered = set().union(*(graph.closed_neighborhood(v) for v in chosen)) if chosen else set()
            if covered >= set(graph.vertices):
                return chosen
    return None


def has_clique(graph: Graph, k: int) -> Optional[tuple]:
    """A set of k pairwise adjacent vertices."""
    for chosen in combinations(graph.vertices, k):
        if all(frozenset(p) in graph.edges for p in combinations(chosen, 2)):
            return chosen
    return None


def has_dense_k_set(graph: Graph, k: int) -> Optional[tuple]:
    """A set of k vertices spanning at least k*k edges (the gadget's own edge count)."""
    for chosen in combinations(graph.vertices, k):
        inside = sum(1 for p in combinations(chosen, 2) if frozenset(p) in graph.edges)
        if inside >= k * k:
            return chosen
    return None


def has_subset_sum(ssi: SubsetSumInstance) -> Optional[tuple[int, ...]]:
    """Indices of at most k values summing to the target."""
    idx = range(len(ssi.values))
    for size in range(ssi.k + 1):
        for chosen in combinations(idx, size):
            if sum(ssi.values[i] for i in chosen) == ssi.target:
                return chosen
    return None


def decode_witness(gadget: Gadget, witness: Iterable[str]) -> set:
    return {gadget.origin[p] for p in witness if p in gadget.origin}
