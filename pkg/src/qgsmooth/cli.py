"""Command-line surface: ``qgsmooth <subcommand> ... [--json]``.

Exit codes: 0 success, 1 an exact identity failed, 2 invalid input
(argparse usage errors included).
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass

from . import __version__
from .config import VerifyConfig
from .errors import QGSmoothError, error_text
from .formatters import format_report
from .reports import (
    cone_report,
    envelope,
    hj_report,
    kk_report,
    markov_planes_report,
    markov_report,
    mutate_report,
    ncdef_report,
    smooth_report,
    verify_report,
    wpp_report,
)
from .suites import SUITES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Outcome:
    exit_code: int
    output: str
    to_stderr: bool = False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON instead of text.")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr.")

    parser = argparse.ArgumentParser(
        prog="qgsmooth",
        description="Exact invariants of Q-Gorenstein smoothings and their exceptional collections.",
    )
    parser.add_argument("--version", action="version", version=f"qgsmooth {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("hj", parents=[common], help="Hirzebruch-Jung expansion of n/q.")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("kk", parents=[common], help="Kalck-Karmazyn algebra of 1/r(1,a).")
    p.add_argument("r", type=int)
    p.add_argument("a", type=int)
    p.add_argument("--no-basis", action="store_true", help="Omit the list of basis words.")

    p = sub.add_parser("ncdef", parents=[common], help="Universal-extension ladder of 1/r(1,a).")
    p.add_argument("r", type=int)
    p.add_argument("a", type=int)

    p = sub.add_parser("markov", parents=[common], help="Markov tree, descent and block orbits.")
    p.add_argument("triple", type=int, nargs="*", metavar="N", help="Optional triple a b c.")
    p.add_argument("--max-entry", type=int, default=1000)
    p.add_argument("--block", type=int, nargs=3, metavar=("ALPHA", "BETA", "GAMMA"))
    p.add_argument("--k-squared", type=int, default=9)

    p = sub.add_parser("mutate", parents=[common], help="Mutation word on (O(-2), O(-1), O).")
    p.add_argument("word", nargs="*", help="Letters L1 L2 R1 R2 C D T<m>.")

    p = sub.add_parser("wpp", parents=[common], help="Weighted projective plane P(w1,w2,w3).")
    p.add_argument("weights", type=int, nargs="*", metavar="W")
    p.add_argument("--span", type=int, default=10, help="Degrees shown in the Hilbert/chi tables.")
    p.add_argument("--cone", type=int, metavar="D", help="Case study of the cone P(1,1,D).")
    p.add_argument("--markov-planes", action="store_true", help="List P(a^2,b^2,c^2) for Markov triples.")
    p.add_argument("--max-entry", type=int, default=1000)

    p = sub.add_parser("smooth", parents=[common], help="Crepant chain of the class T point (r,a,s).")
    p.add_argument("r", type=int)
    p.add_argument("a", type=int)
    p.add_argument("s", type=int)

    p = sub.add_parser("verify", parents=[common], help="Run invariant suites.")
    p.add_argument(
        "--suite",
        action="append",
        choices=["all", *sorted(SUITES)],
        help="Suite to run (repeatable); default all.",
    )
    p.add_argument("--max-r", type=int)
    p.add_argument("--max-s", type=int)
    p.add_argument("--max-entry", type=int)
    p.add_argument("--seed", type=int)
    return parser


def _report(args: argparse.Namespace) -> tuple[dict, int]:
    if args.command == "hj":
        return hj_report(args.n, args.q), 0
    if args.command == "kk":
        return kk_report(args.r, args.a, words=not args.no_basis), 0
    if args.command == "ncdef":
        return ncdef_report(args.r, args.a), 0
    if args.command == "markov":
        if args.triple and len(args.triple) != 3:
            raise argparse.ArgumentTypeError("markov takes no triple or exactly three entries")
        return markov_report(
            args.max_entry,
            triple=args.triple or None,
            block_sizes=args.block,
            k_squared=args.k_squared,
        ), 0
    if args.command == "mutate":
        return mutate_report(args.word), 0
    if args.command == "wpp":
        if args.cone is not None:
            return cone_report(args.cone), 0
        if args.markov_planes:
            return markov_planes_report(args.max_entry), 0
        if len(args.weights) != 3:
            raise argparse.ArgumentTypeError("wpp needs three weights, --cone D or --markov-planes")
        return wpp_report(args.weights, span=args.span), 0
    if args.command == "smooth":
        return smooth_report(args.r, args.a, args.s), 0
    if args.command == "verify":
        cfg = VerifyConfig().with_overrides(
            max_r=args.max_r,
            max_s=args.max_s,
            max_entry=args.max_entry,
            seed=args.seed,
        )
        report = verify_report(args.suite or "all", cfg)
        return report, 0 if report["ok"] else 1
    raise argparse.ArgumentTypeError(f"unknown command {args.command!r}")


def _error_output(command: str, exc: BaseException, exit_code: int, as_json: bool) -> str:
    if as_json:
        details = getattr(exc, "details", None)
        body = {
            "error": {
                "type": type(exc).__name__,
                "message": error_text(exc),
                "details": details,
                "exit_code": exit_code,
            }
        }
        return format_report(envelope(command, body), "json")
    return f"error: {error_text(exc)}"


def dispatch(argv: Sequence[str] | None = None) -> Outcome:
    """Parse ``argv``, build the report and serialize it."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return Outcome(exit_code=code, output="")

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    fmt = "json" if args.json else "text"
    try:
        report, code = _report(args)
    except argparse.ArgumentTypeError as exc:
        return Outcome(exit_code=2, output=f"{parser.format_usage()}qgsmooth: error: {exc}", to_stderr=True)
    except QGSmoothError as exc:
        logger.debug("%s failed: %r", args.command, exc)
        return Outcome(
            exit_code=exc.exit_code,
            output=_error_output(args.command, exc, exc.exit_code, args.json),
            to_stderr=not args.json,
        )
    return Outcome(exit_code=code, output=format_report(report, fmt))


def main(argv: Sequence[str] | None = None) -> int:
    outcome = dispatch(argv)
    if outcome.output:
        stream = sys.stderr if outcome.to_stderr else sys.stdout
        stream.write(outcome.output if outcome.output.endswith("\n") else outcome.output + "\n")
    return outcome.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
