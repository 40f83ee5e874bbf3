"""Command line entry point. Results go to stdout as JSON, summaries to stderr.

Exit codes: 0 success, 1 usage or input error, 2 verification disagreement,
3 oracle capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, replace
from pathlib import Path

from .dispatch import dispatch_solve
from .harness import bench, doubling_ratios, verify_paths, verify_seeds
from .instances import GenParams, emit_instance, load_instance, random_problem
from .model import ControlQuery, InvalidInstance, SolverMismatch
from .oracle import DEFAULT_CAP, CapacityError
from .reductions import (
    Graph,
    SubsetSumInstance,
    clique_gadget,
    dominating_set_gadget,
    subset_sum_gadget,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    if not args.instance:
        raise UsageError("--instance is required")
    election, objective, query = load_instance(args.instance)
    if args.k is not None:
        query = ControlQuery(query.action, query.mode, args.k)
    return election, objective, query


def cmd_solve(args, solver=None) -> int:
    election, objective, query = _load(args)
    rec = dispatch_solve(election, objective, query, solver or args.solver, args.cap)
    _write(json.dumps(rec.to_json(), indent=2) + "\n", args.out)
    print(f"{rec.problem}: {'yes' if rec.decision else 'no'} via {rec.solver}"
          f" witness={rec.witness} n_c={rec.coalition_votes}/{rec.total_votes}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.instance:
        report = verify_paths([args.instance], args.cap, args.inject_corruption)
    else:
        base = GenParams(kind=args.kind, m=args.m, n=args.n, k=args.k if args.k is not None else 2)
        report = verify_seeds(range(args.seed, args.seed + args.count), base, args.cap,
                              args.inject_corruption)
    _write(json.dumps(report.to_json(), indent=2) + "\n", args.out)
    print(f"verified {len(report.rows)} instances: {report.disagreements} disagreements,"
          f" {report.capacity_errors} capacity errors", file=sys.stderr)
    return report.exit_code


def cmd_generate(args) -> int:
    params = GenParams(kind=args.kind, m=args.m, n=args.n,
                       k=args.k if args.k is not None else 2, action=args.action, mode=args.mode,
                       coalition_density=args.coalition_density,
                       spoiler_density=args.spoiler_density, q_target=args.q, seed=args.seed)
    _write(emit_instance(*random_problem(params)), args.out)
    return 0


def _graph(spec: str, vertices: int) -> Graph:
    edges = []
    for tok in filter(None, (spec or "").split(",")):
        a, _, b = tok.partition("-")
        edges.append((int(a), int(b)))
    return Graph(range(vertices), edges)


def cmd_reduce(args) -> int:
    k = args.k if args.k is not None else 1
    if args.source == "dominating-set":
        gadget = dominating_set_gadget(_graph(args.edges, args.vertices), k, args.target)
    elif args.source == "clique":
        gadget = clique_gadget(_graph(args.edges, args.vertices), k, args.target)
    else:
        if not args.values or args.tau is None:
            raise UsageError("subset-sum needs --values and --tau")
        values = [int(v) for v in args.values.split(",")]
        gadget = subset_sum_gadget(SubsetSumInstance(values, args.tau, k), args.target)
    _write(emit_instance(*gadget.problem), args.out)
    if gadget.note:
        print(f"note: {gadget.note}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    ns = [int(x) for x in args.ns.split(",")]
    rows = bench(ns, m=args.m, k=args.k if args.k is not None else 3, q=args.q or 2,
                 seeds=range(args.seed, args.seed + args.count))
    ratios = doubling_ratios(rows)
    _write(json.dumps({"rows": [asdict(r) for r in rows], "doubling_ratios": ratios},
                      indent=2) + "\n", args.out)
    for solver, rs in ratios.items():
        print(f"{solver}: " + ", ".join(f"{n}->{2 * n}: {r:.2f}x" for n, r in rs), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coalition-control", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, instance=True):
        if instance:
            p.add_argument("--instance", help="instance JSON file (or directory for verify)")
        p.add_argument("--k", type=int, help="override the budget")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle subset cap")
        return p

    p = common(sub.add_parser("solve", help="solve one instance"))
    p.add_argument("--solver", default="auto")
    p.set_defaults(run=cmd_solve)

    p = common(sub.add_parser("oracle", help="solve one instance exhaustively"))
    p.set_defaults(run=lambda a: cmd_solve(a, "oracle"))

    gen_opts = argparse.ArgumentParser(add_help=False)
    gen_opts.add_argument("--seed", type=int, default=0)
    gen_opts.add_argument("--kind", choices=("ssp", "general"), default="ssp")
    gen_opts.add_argument("--m", type=int, default=6)
    gen_opts.add_argument("--n", type=int, default=20)

    p = common(sub.add_parser("verify", parents=[gen_opts],
                              help="cross-check solvers against the oracle"))
    p.add_argument("--count", type=int, default=100, help="number of seeds when no --instance")
    p.add_argument("--inject-corruption", action="store_true",
                   help="negative control: forge failing witnesses, expect exit 2")
    p.set_defaults(run=cmd_verify)

    p = common(sub.add_parser("generate", parents=[gen_opts], help="seeded random instance"),
               instance=False)
    p.add_argument("--action", choices=("ACP", "AOP", "DCP", "DOP"))
    p.add_argument("--mode", choices=("CC", "CCFP"))
    p.add_argument("--q", type=int, help="number of coalition intervals")
    p.add_argument("--coalition-density", type=float, default=0.5)
    p.add_argument("--spoiler-density", type=float, default=0.4)
    p.set_defaults(run=cmd_generate)

    p = common(sub.add_parser("reduce", help="build a hardness gadget"), instance=False)
    p.add_argument("--source", choices=("dominating-set", "clique", "subset-sum"), required=True)
    p.add_argument("--target", required=True, help="e.g. CC-ACP, CCFP-AOP, CC-DOP, CCFP-DCP")
    p.add_argument("--vertices", type=int, default=0)
    p.add_argument("--edges", help="comma separated a-b pairs over vertices 0..V-1")
    p.add_argument("--values", help="comma separated positive ints")
    p.add_argument("--tau", type=int)
    p.set_defaults(run=cmd_reduce)

    p = common(sub.add_parser("bench", help="DP table size and wall time over n"), instance=False)
    p.add_argument("--ns", default="50,100,200,400")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(run=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 3
    except (UsageError, InvalidInstance, SolverMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
