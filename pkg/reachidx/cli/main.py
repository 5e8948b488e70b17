"""
Command-line entry point

Subcommands: gen, build, query, bench, verify.
Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from reachidx.cli.commands import cmd_bench, cmd_build, cmd_gen, cmd_query, cmd_verify
from reachidx.cli.models import RunConfig
from reachidx.core.config import Settings, get_settings
from reachidx.core.errors import ReachIndexError, VerificationFailed
from reachidx.core.logging import configure_logging
from reachidx.store.files import format_answers

logger = logging.getLogger(__name__)

INDEX_KINDS = ["dl", "hl", "tree", "tree-sampled", "ktree", "grail", "brute", "scarab"]


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for verification failures."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_index_flags(parser: ArgumentParser, settings: Settings) -> None:
    parser.add_argument("--input", required=True, help="edge-list file")
    parser.add_argument("--kind", choices=INDEX_KINDS, default="dl")
    parser.add_argument("--output", default=None, help="index file to write")
    parser.add_argument("--epsilon", type=int, default=settings.EPSILON)
    parser.add_argument("--theta", type=float, default=settings.THETA)
    parser.add_argument("--delta", type=float, default=settings.DELTA)
    parser.add_argument("--group-size", type=int, default=settings.GROUP_SIZE)
    parser.add_argument("--groups", type=int, default=None, help="batched exact weights with K groups (tree)")
    parser.add_argument("--levels", type=int, default=settings.MAX_LEVELS)
    parser.add_argument("--core-limit", type=int, default=settings.CORE_LIMIT)
    parser.add_argument("--alpha", type=float, default=settings.PRESELECT_ALPHA)
    parser.add_argument("--c", type=int, default=settings.GRAIL_TRAVERSALS)
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument("--k", type=int, default=settings.KTREE_K)
    parser.add_argument("--max-iters", type=int, default=settings.KTREE_MAX_ITERS)
    parser.add_argument("--inner", choices=["dl", "tree", "closure"], default="dl")


def build_parser(settings: Settings) -> ArgumentParser:
    parser = ArgumentParser(prog="reachidx", description="Reachability index toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a seeded random DAG")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--deg", type=float, default=2.0)
    gen.add_argument("--seed", type=int, default=settings.SEED)
    gen.add_argument("--out", required=True)

    build = sub.add_parser("build", help="build and store an index")
    _add_index_flags(build, settings)

    query = sub.add_parser("query", help="answer a pairs file with a stored index")
    query.add_argument("--index", required=True)
    query.add_argument("--pairs", required=True)
    query.add_argument("--output", default=None, help="answers file (stdout when omitted)")

    bench = sub.add_parser("bench", help="build an index and time a query workload")
    _add_index_flags(bench, settings)
    bench.add_argument("--workload", choices=["equal", "random"], default="equal")
    bench.add_argument("--count", type=int, default=100000)
    bench.add_argument("--verify", action="store_true")
    bench.add_argument("--answers", default=None, help="write the answer stream here")

    verify = sub.add_parser("verify", help="check every index against the closure oracle")
    verify.add_argument("--input", required=True)
    verify.add_argument("--epsilon", type=int, nargs="+", default=[settings.EPSILON])
    verify.add_argument("--labels", default=None, help="hoplabel-v1 file to check for completeness")
    verify.add_argument("--seed", type=int, default=settings.SEED)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.model_fields and v is not None}
    return RunConfig(**fields)


def run(args: argparse.Namespace) -> int:
    if args.command == "gen":
        cmd_gen(args.n, args.deg, args.seed, args.out)
        return 0
    if args.command == "query":
        answers = cmd_query(args.index, args.pairs, args.output)
        if args.output is None:
            sys.stdout.write(format_answers(answers))
        return 0
    if args.command == "verify":
        for eps in args.epsilon:
            if eps < 1:
                raise ValueError(f"epsilon must be >= 1, got {eps}")
        report = cmd_verify(args.input, args.epsilon, args.labels, args.seed)
        for result in report.results:
            print(result.model_dump_json())
        return 0 if report.ok else VerificationFailed.exit_code

    cfg = _run_config(args)
    record = cmd_build(cfg) if args.command == "build" else cmd_bench(cfg)
    print(record.model_dump_json())
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        settings = get_settings()
    except (ValueError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    configure_logging(settings)
    parser = build_parser(settings)
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ReachIndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: invalid parameters:\n{exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
