"""Print table-entry growth of the DP solvers as n doubles."""

import argparse
import sys

from coalition_control.harness import DP_SOLVERS, bench, doubling_ratios


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="50,100,200,400")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--limit", type=float, default=4.5)
    args = ap.parse_args(argv)

    ns = [int(x) for x in args.ns.split(",")]
    rows = bench(ns=ns, m=args.m, k=args.k, q=args.q, seeds=range(args.seeds), solvers=DP_SOLVERS)
    worst = 0.0
    print(f"{'solver':14} " + " ".join(f"{f'{n}->{2 * n}':>10}" for n in ns[:-1]))
    for solver, ratios in doubling_ratios(rows).items():
        print(f"{solver:14} " + " ".join(f"{r:10.2f}" for _, r in ratios))
        worst = max([worst] + [r for _, r in ratios])
    wall = {}
    for r in rows:
        wall[r.solver, r.n] = wall.get((r.solver, r.n), 0.0) + r.wall_seconds
    print(f"worst ratio {worst:.2f} (limit {args.limit}); "
          f"slowest cell {max(wall.values()) / args.seeds * 1000:.1f} ms per instance")
    return 0 if worst <= args.limit else 1


if __name__ == "__main__":
    sys.exit(main())
