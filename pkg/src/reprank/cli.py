"""Command-line surface.

Subcommands:
  rank      load a dataset and print one ranking (eer, pagerank, or ndr)
  evaluate  run the full comparison protocol and emit a JSON report
  perturb   flip one node's incoming ratings, emit dataset + before/after
  simulate  generate a synthetic scenario from a JSON spec

Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to stderr
and are plain text (nothing to disable for NO_COLOR).
"""

import argparse
import sys

from .errors import RepRankError
from .evaluation import ProtocolConfig, perturb_flip_incoming, run_protocol
from .generate import generate_scenario, load_scenario_spec
from .io import (
    atomic_write_text,
    edge_csv_text,
    load_edge_csv,
    load_matrix,
    report_text,
    write_edge_csv,
    write_report,
)
from .model import RatingScale
from .reputation import HistoryWindow, rank_all
from .baselines import ndr_reputation, pagerank


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems via exception (exit code 1)."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _data_flags(parser):
    parser.add_argument("--input", required=True, help="dataset file")
    parser.add_argument("--format", choices=("edge", "matrix"), default="edge")
    parser.add_argument("--scale-min", type=int, default=1)
    parser.add_argument("--scale-max", type=int, default=5)
    parser.add_argument("--unknown", type=int, default=0)
    parser.add_argument("--threshold", type=float, default=None,
                        help="polarity threshold (default: scale midpoint)")
    parser.add_argument("--window", type=HistoryWindow.parse, default="all",
                        metavar="all|latest:<k>")
    parser.add_argument("--transpose", action="store_true",
                        help="matrix cells are rated-by-column instead of by-row")


def build_parser() -> _Parser:
    parser = _Parser(prog="reprank", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="rank nodes with one method")
    _data_flags(rank)
    rank.add_argument("--method", choices=("eer", "pagerank", "ndr"), default="eer")
    rank.add_argument("--out", help="write the ranking here instead of stdout")

    ev = sub.add_parser("evaluate", help="run the full evaluation protocol")
    _data_flags(ev)
    ev.add_argument("--k", type=int, default=10, help="top-k size for precision")
    ev.add_argument("--perturb-target", default=None,
                    help="also run the weight-flip test against this node")
    ev.add_argument("--seed", type=int, default=None, help="recorded in the report")
    ev.add_argument("--out", help="report file (default: stdout)")

    pert = sub.add_parser("perturb", help="flip one node's incoming ratings")
    _data_flags(pert)
    pert.add_argument("--target", required=True)
    pert.add_argument("--method", choices=("eer", "pagerank", "ndr"), default="eer")
    pert.add_argument("--out-dataset", required=True,
                      help="write the perturbed dataset (edge CSV) here")

    sim = sub.add_parser("simulate", help="generate a synthetic scenario")
    sim.add_argument("--spec", required=True, help="scenario JSON file")
    sim.add_argument("--seed", type=int, default=None, help="override the spec seed")
    sim.add_argument("--out", help="dataset file (edge CSV; default: stdout)")

    return parser


def _scale_from(args) -> RatingScale:
    try:
        return RatingScale(
            min_valid=args.scale_min,
            max_valid=args.scale_max,
            unknown_value=args.unknown,
            threshold=args.threshold,
        )
    except ValueError as exc:
        raise UsageError(f"reprank: bad scale: {exc}") from None


def _load(args):
    scale = _scale_from(args)
    if args.format == "matrix":
        return load_matrix(args.input, scale, transpose=args.transpose)
    return load_edge_csv(args.input, scale)


def _ranking_lines(args, dataset) -> list[str]:
    if args.method == "eer":
        ranked = [(s.node, s.reputation) for s in rank_all(dataset, args.window)]
    elif args.method == "pagerank":
        ranked = pagerank(dataset).ordered()
    else:
        ranked = ndr_reputation(dataset).ordered()
    return [f"{i + 1} {node} {score:.6f}" for i, (node, score) in enumerate(ranked)]


def _emit(text: str, out_path) -> None:
    if out_path:
        atomic_write_text(out_path, text)
    else:
        sys.stdout.write(text)


def _cmd_rank(args) -> int:
    lines = _ranking_lines(args, _load(args))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_evaluate(args) -> int:
    if args.k < 1:
        raise UsageError("reprank evaluate: --k must be >= 1")
    dataset = _load(args)
    config = ProtocolConfig(
        k=args.k,
        window=args.window,
        perturb_target=args.perturb_target,
        dataset_id=args.input,
        seed=args.seed,
    )
    reports = run_protocol(dataset, config)
    if args.out:
        write_report(reports, args.out)
    else:
        sys.stdout.write(report_text(reports))
    return 0


def _cmd_perturb(args) -> int:
    dataset = _load(args)
    perturbed = perturb_flip_incoming(dataset, args.target)
    write_edge_csv(perturbed, args.out_dataset)
    before = _ranking_lines(args, dataset)
    after = _ranking_lines(args, perturbed)
    out = [f"target {args.target}", f"method {args.method}", "before:"]
    out += [f"  {line}" for line in before]
    out.append("after:")
    out += [f"  {line}" for line in after]
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _cmd_simulate(args) -> int:
    spec = load_scenario_spec(args.spec, seed_override=args.seed)
    dataset = generate_scenario(spec)
    _emit(edge_csv_text(dataset), args.out)
    return 0


_COMMANDS = {
    "rank": _cmd_rank,
    "evaluate": _cmd_evaluate,
    "perturb": _cmd_perturb,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except RepRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
