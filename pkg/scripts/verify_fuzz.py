"""Cross-check every applicable solver against the oracle over a seeded sweep.

    python3 scripts/verify_fuzz.py --count 500 --m 7 --n 20
"""

import argparse
import json
import sys
from collections import Counter

from coalition_control.harness import verify_seeds
from coalition_control.instances import GenParams


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--kind", choices=["ssp", "general"], default="ssp")
    ap.add_argument("--json", action="store_true", help="dump the full report")
    args = ap.parse_args(argv)

    base = GenParams(kind=args.kind, m=args.m, n=args.n, k=args.k)
    report = verify_seeds(range(args.start, args.start + args.count), base)
    if args.json:
        json.dump(report.to_json(), sys.stdout, indent=2)
        print()
    used = Counter(s for row in report.rows for s in row.solvers)
    for solver, hits in sorted(used.items()):
        print(f"{solver:24} {hits:5} instances")
    print(f"{len(report.rows)} instances, {report.disagreements} disagreements, "
          f"{report.capacity_errors} over capacity")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
