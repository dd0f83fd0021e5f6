"""Command line: ``oddlib generate|verify|singletons|intervals``.

Exit codes: 0 success, 1 verification failure, 2 generation infeasible,
64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import artifact
from .formats import FPFormat
from .generator import GenerationConfig, GenerationFailed, generate, oracle_results
from .intervals import calc_odd_intervals, dump_constraints
from .oracle import Func, singleton_census
from .polygen import DEFAULT_MAX_ITERS, DEFAULT_SAMPLE_CAP, TermStructure
from .reduction import ReductionError, ReductionKind
from .rounding import STANDARD_MODES, RoundingMode
from .verify import check_all

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _format_arg(text: str) -> FPFormat:
    try:
        n, e = (int(p) for p in text.split(","))
        return FPFormat(n, e)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad format {text!r}: {exc}") from None


def _power_of_two(text: str) -> int:
    v = int(text)
    if v < 1 or v & (v - 1):
        raise argparse.ArgumentTypeError(f"{v} is not a power of two")
    return v


def _targets(text: str) -> Optional[list[int]]:
    if text == "all":
        return None
    if text.startswith("k="):
        text = text[2:]
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad target list {text!r}") from None


def _modes(text: str) -> list[RoundingMode]:
    if text == "all":
        return list(STANDARD_MODES)
    try:
        modes = [RoundingMode(m) for m in text.split(",") if m]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad mode list {text!r}") from None
    if any(m not in STANDARD_MODES for m in modes):
        raise argparse.ArgumentTypeError("only rn, ra, rz, ru and rd can be verified")
    return modes


def _add_target_args(p: argparse.ArgumentParser):
    p.add_argument("--func", required=True, choices=[f.value for f in Func])
    p.add_argument("--n", type=int, required=True, help="width of T_n in bits")
    p.add_argument("--ebits", type=int, required=True, help="exponent bits of T_n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oddlib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build an artifact for one function")
    _add_target_args(g)
    g.add_argument("--h", type=_format_arg, default=FPFormat(64, 11),
                   help="evaluation format as bits,ebits (default 64,11)")
    g.add_argument("--rr", choices=[k.value for k in ReductionKind], default=None,
                   help="range reduction (default depends on the function)")
    g.add_argument("--max-degree", type=int, default=8)
    g.add_argument("--max-pieces", type=_power_of_two, default=64)
    g.add_argument("--sample-cap", type=int, default=DEFAULT_SAMPLE_CAP)
    g.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    g.add_argument("--guard", type=int, default=None, help="guard ulps of H")
    g.add_argument("--terms", choices=[t.value for t in TermStructure], default="all")
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("-o", "--output", default=None, help="artifact path (default stdout)")
    g.add_argument("--log", default=None, help="write the generation log here")

    v = sub.add_parser("verify", help="check an artifact exhaustively")
    v.add_argument("artifact")
    v.add_argument("--targets", type=_targets, default=None, help="k=5,6 or all")
    v.add_argument("--modes", type=_modes, default=None, help="rn,rz,... or all")
    v.add_argument("--json", default=None, help="write a JSON summary here")

    s = sub.add_parser("singletons", help="list inputs with exactly representable results")
    _add_target_args(s)

    i = sub.add_parser("intervals", help="dump the odd-interval constraints")
    _add_target_args(i)
    i.add_argument("--h", type=_format_arg, default=FPFormat(64, 11))
    i.add_argument("-o", "--output", default=None)
    i.add_argument("--jobs", type=int, default=1)
    return parser


def _formats(args) -> tuple[FPFormat, FPFormat]:
    try:
        return FPFormat(args.n, args.ebits), FPFormat(args.n + 2, args.ebits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _generation_log(res) -> str:
    g = res.function
    lines = [f"function {g.func}  T_n={g.tn}  T_n+2={g.tn2}  H={g.h}",
             f"reduction {g.rr.kind}  inputs {res.stats['inputs']}  "
             f"singletons {res.stats['singletons']}  clamped {res.stats['clamped']}  "
             f"constraints {res.constraints}  reduced {res.reduced_constraints}",
             f"polynomials {g.poly.piece_count}  degree {max(p.degree for p in g.poly.pieces)}  "
             f"terms {max(p.terms for p in g.poly.pieces)}",
             "piece constraints degree terms iterations"]
    for p in res.log.pieces:
        lines.append(f"{p.index:5d} {p.constraints:11d} {p.degree:6d} {p.terms:5d} {p.iterations:10d}")
    return "\n".join(lines) + "\n"


def cmd_generate(args) -> int:
    _formats(args)
    cfg = GenerationConfig(
        Func(args.func), args.n, args.ebits, h=args.h,
        reduction=ReductionKind(args.rr) if args.rr else None,
        max_degree=args.max_degree, max_pieces=args.max_pieces,
        sample_cap=args.sample_cap, max_iters=args.max_iters, guard=args.guard,
        structure=TermStructure(args.terms), jobs=args.jobs)
    try:
        res = generate(cfg)
    except (GenerationFailed, ReductionError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    text = artifact.dumps(res.function)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log = _generation_log(res)
    if args.log:
        with open(args.log, "w") as fh:
            fh.write(log)
    else:
        sys.stderr.write(log)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g = artifact.read(args.artifact)
    except (OSError, artifact.ArtifactError) as exc:
        raise UsageError(str(exc)) from None
    try:
        report = check_all(g, args.targets, args.modes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(report.to_text())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_singletons(args) -> int:
    tn, tn2 = _formats(args)
    rows = singleton_census(Func(args.func), tn, tn2)
    for x, y in rows:
        print(f"{x.hex()}  {x.value()}  ->  {y}")
    print(f"{len(rows)} singleton inputs for {args.func} on {tn} -> {tn2}")
    return EXIT_OK


def cmd_intervals(args) -> int:
    tn, tn2 = _formats(args)
    results = oracle_results(Func(args.func), tn, tn2, args.jobs)
    constraints, singles = calc_odd_intervals(results, args.h)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        dump_constraints(constraints, args.h, out)
    finally:
        if args.output:
            out.close()
    print(f"{len(constraints)} constraints, {len(singles)} singletons", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {"generate": cmd_generate, "verify": cmd_verify,
             "singletons": cmd_singletons, "intervals": cmd_intervals}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"oddlib: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
