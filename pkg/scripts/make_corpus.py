"""Write the golden instance corpus used by `coalition-control verify --instance corpus/`."""

import sys
from fractions import Fraction
from pathlib import Path

from coalition_control import ControlQuery, Election, Objective, Party, VoterBlock, emit_instance
from coalition_control.reductions import (
    Graph,
    SubsetSumInstance,
    clique_gadget,
    dominating_set_gadget,
    subset_sum_gadget,
)


def three_party_acp():
    parties = (Party("p1", coalition=True), Party("p2", coalition=True, spoiler=True), Party("p3"))
    voters = (
        VoterBlock(2, order=("p3", "p2", "p1")),
        VoterBlock(2, order=("p2", "p3", "p1")),
        VoterBlock(2, order=("p1", "p3", "p2")),
    )
    e = Election(parties, voters)
    return e, Objective(e.coalition, Fraction(2, 3)), ControlQuery("ACP", "CC", 1)


def four_party_acp_favored():
    parties = (
        Party("p1", coalition=True),
        Party("p2", coalition=True, spoiler=True),
        Party("p3", coalition=True, spoiler=True),
        Party("p4"),
    )
    voters = (
        VoterBlock(2, order=("p3", "p4", "p2", "p1")),
        VoterBlock(2, order=("p2", "p3", "p4", "p1")),
        VoterBlock(2, order=("p1", "p3", "p2", "p4")),
    )
    e = Election(parties, voters)
    return e, Objective(e.coalition, Fraction(2, 3), "p1", Fraction(1, 2)), ControlQuery("ACP", "CCFP", 1)


def corpus():
    yield "cc_acp_three_party", three_party_acp()
    yield "ccfp_acp_four_party", four_party_acp_favored()
    triangle = Graph(range(3), [(0, 1), (1, 2), (0, 2)])
    path = Graph(range(3), [(0, 1), (1, 2)])
    k4 = Graph(range(4), [(a, b) for a in range(4) for b in range(a + 1, 4)])
    yield "domset_triangle_cc_acp", dominating_set_gadget(triangle, 1, "CC-ACP").problem
    yield "domset_path_ccfp_aop", dominating_set_gadget(path, 1, "CCFP-AOP").problem
    yield "clique_k4_cc_dop", clique_gadget(k4, 2, "CC-DOP").problem
    yield "clique_k4_ccfp_dcp", clique_gadget(k4, 2, "CCFP-DCP").problem
    ssi = SubsetSumInstance([1, 2, 3], 3, 2)
    for target in ("CCFP-ACP", "CCFP-AOP", "CCFP-DCP", "CCFP-DOP"):
        yield f"subset_sum_{target.lower().replace('-', '_')}", subset_sum_gadget(ssi, target).problem


def main(out="corpus"):
    out = Path(out)
    out.mkdir(exist_ok=True)
    for name, problem in corpus():
        (out / f"{name}.json").write_text(emit_instance(*problem))
        print(out / f"{name}.json")


if __name__ == "__main__":
    main(*sys.argv[1:])
