"""Command-line front end.

Exit status: 0 success/pass, 1 verification failure, 2 usage or parse
error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import replace
from typing import Iterator, TextIO

from . import complexity as cx
from . import verify, word_ops
from .factor_enum import DEFAULT_POLICY, ResourceCapError, StabilizationPolicy, stable_factors
from .sequences import DfaoParseError, DfaoValidationError, InfiniteWord, builtin, from_dfao, load_dfao
from .word_ops import IterationCapError, format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

TABLE_KINDS = {"rho": "factor", "ab": "abelian", "tortoise": "tortoise", "nearly": "nearly_abelian"}


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"3"`` -> (3, 3); ``"1..15"`` -> (1, 15)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            r = (int(lo), int(hi))
        else:
            r = (int(text), int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if r[0] > r[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return r


def _add_sequence_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--seq", choices=["f", "t"], help="built-in sequence: f (paperfolding) or t (Thue-Morse)")
    g.add_argument("--dfao", metavar="PATH", help="sequence defined by a DFAO description file")


def _add_policy_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prefix-init", type=int, help="minimum initial prefix length (default 1024)")
    p.add_argument("--prefix-max", type=int, help="prefix length cap (default 2^24)")
    p.add_argument("--window", type=int, help="stable doublings required (default 2)")
    p.add_argument("--pure-doubling", action="store_true", help="never stop early on a closed-form count")


def _add_output_args(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordsort", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", help="apply a word operation")
    p.add_argument("op", choices=["hare", "tortoise", "sort", "index", "iterate", "nearly"])
    p.add_argument("word", help="digit string, or comma-separated integers")
    p.add_argument("--k", type=int, default=1, help="iterations for 'iterate'")

    p = sub.add_parser("prefix", help="emit a sequence prefix")
    _add_sequence_args(p)
    p.add_argument("length", type=int)
    _add_output_args(p, ("text",))

    p = sub.add_parser("factors", help="list the distinct length-n factors")
    _add_sequence_args(p)
    p.add_argument("--n", type=int, required=True)
    _add_policy_args(p)
    _add_output_args(p, ("text", "json"))

    p = sub.add_parser("classes", help="tortoise equivalence classes of length-n factors")
    _add_sequence_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    _add_policy_args(p)
    _add_output_args(p, ("json",))

    p = sub.add_parser("table", help="complexity table over a range of n")
    p.add_argument("kind", choices=list(TABLE_KINDS))
    _add_sequence_args(p)
    p.add_argument("--n", type=parse_range, required=True, metavar="LO..HI")
    p.add_argument("--k", type=int, default=1)
    _add_policy_args(p)
    _add_output_args(p, ("text", "csv", "json"))

    p = sub.add_parser("stat", help="abel_x(k) or the paperfolding threshold s(k)")
    p.add_argument("kind", choices=["abel", "threshold"])
    _add_sequence_args(p, required=False)
    p.add_argument("--k", type=parse_range, required=True, metavar="LO[..HI]")
    p.add_argument("--nmax", type=int, default=40)
    _add_policy_args(p)
    _add_output_args(p, ("text", "json"))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.add_argument("--n", type=parse_range, required=True, metavar="LO..HI")
    _add_policy_args(p)
    _add_output_args(p, ("text", "json"))
    return parser


def _policy(args, base: StabilizationPolicy = DEFAULT_POLICY) -> StabilizationPolicy:
    changes = {}
    if args.prefix_init is not None:
        changes["min_initial"] = args.prefix_init
    if args.prefix_max is not None:
        changes["max_length"] = args.prefix_max
    if args.window is not None:
        changes["window"] = args.window
    if args.pure_doubling:
        changes["use_closed_form"] = False
    for name in ("min_initial", "max_length", "window"):
        if changes.get(name, 1) < 1:
            raise UsageError(f"{name} must be positive")
    return replace(base, **changes)


def _sequence(args) -> InfiniteWord:
    if args.dfao:
        return from_dfao(load_dfao(args.dfao), name=args.dfao)
    if args.seq:
        return builtin(args.seq)
    raise UsageError("one of --seq or --dfao is required")


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def cmd_word(args) -> int:
    w = parse_word(args.word)
    if args.op == "index":
        print(word_ops.tortoise_sort_index(w))
        return EXIT_OK
    if args.op == "iterate":
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        result = word_ops.iterate_tortoise(w, args.k)
    else:
        ops = {
            "hare": word_ops.hare,
            "tortoise": word_ops.tortoise,
            "sort": word_ops.sort,
            "nearly": word_ops.nearly_abelian_key,
        }
        result = ops[args.op](w)
    print(format_word(result))
    return EXIT_OK


def cmd_prefix(args) -> int:
    x = _sequence(args)
    with _output(args.out) as out:
        out.write(format_word(x.prefix(args.length)) + "\n")
    return EXIT_OK


def cmd_factors(args) -> int:
    fs = stable_factors(_sequence(args), args.n, _policy(args))
    with _output(args.out) as out:
        out.write(fs.to_text() if args.format == "text" else fs.to_json() + "\n")
    return EXIT_OK


def cmd_classes(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    report = cx.class_report(_sequence(args), args.n, args.k, _policy(args))
    with _output(args.out) as out:
        out.write(report.to_json() + "\n")
    return EXIT_OK


def cmd_table(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    lo, hi = args.n
    # computed in full before anything is written, so a cap leaves no partial table
    table = cx.complexity_table(_sequence(args), TABLE_KINDS[args.kind], range(lo, hi + 1), args.k, _policy(args))
    with _output(args.out) as out:
        if args.format == "csv":
            out.write(table.to_csv())
        elif args.format == "json":
            out.write(table.to_json() + "\n")
        else:
            out.write(",".join(map(str, table.values())) + "\n")
    return EXIT_OK


def cmd_stat(args) -> int:
    lo, hi = args.k
    if lo < 1:
        raise UsageError("--k must be at least 1")
    if args.nmax < 1:
        raise UsageError("--nmax must be at least 1")
    policy = _policy(args)
    if args.kind == "threshold":
        if args.dfao or args.seq not in (None, "f"):
            raise UsageError("threshold is defined for the paperfolding word only")
        try:
            stats = [cx.pf_threshold(k, args.nmax, policy) for k in range(lo, hi + 1)]
        except cx.ThresholdNotFound as exc:
            print(f"no threshold: {exc}", file=sys.stderr)
            return EXIT_FAIL
        name = "s"
    else:
        x = _sequence(args)
        stats = [cx.abel_stat(x, k, args.nmax, policy) for k in range(lo, hi + 1)]
        name = "abel"
    with _output(args.out) as out:
        if args.format == "json":
            rows = [{"k": s.k, "value": s.value, "n_max": s.n_max} for s in stats]
            out.write(json.dumps({"statistic": name, "n_max": args.nmax, "values": rows}, indent=2) + "\n")
        else:
            out.write(",".join(str(s) for s in stats) + "\n")
            out.write(f"# {name}(k) for k={lo}..{hi}, checked for n <= {args.nmax} only\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    lo, hi = args.n
    reports = verify.run_suite(args.suite, lo, hi, _policy(args, verify.PURE_DOUBLING))
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
        else:
            for r in reports:
                out.write(r.to_text() + "\n")
            verdict = "PASS" if all(r.passed for r in reports) else "FAIL"
            out.write(f"{args.suite}: {verdict} ({len(reports)} report(s), n={lo}..{hi})\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "word": cmd_word,
    "prefix": cmd_prefix,
    "factors": cmd_factors,
    "classes": cmd_classes,
    "table": cmd_table,
    "stat": cmd_stat,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ResourceCapError, IterationCapError) as exc:
        print(f"wordsort: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError, KeyError, OSError, DfaoParseError, DfaoValidationError) as exc:
        print(f"wordsort: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
