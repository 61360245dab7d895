"""Command line interface.

Exit codes: 0 success or HOLDS, 1 a semantic negative (FAILS, NO-SOLUTION,
NOT-INDUCED, invalid band), 2 usage or parse errors, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import finite, schemes
from .errors import BandError, BudgetExceeded, NoSolution, NotInduced, ParseError
from .varieties import format_invariant, invariant, parse_variety, satisfies
from .words import format_word, parse_word, word_style


class UsageError(Exception):
    pass


def _word(text: str):
    try:
        return parse_word(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _variety(text: str):
    try:
        return parse_variety(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> finite.Budget:
    if args.budget is None:
        return finite.default_budget()
    try:
        return finite.Budget.from_text(args.budget)
    except ValueError as exc:
        raise UsageError(f"bad --budget: {exc}") from None


def cmd_canon(args, out) -> int:
    w = _word(args.word)
    value = invariant(_variety(args.variety), w)
    print(format_invariant(value, word_style(args.word)), file=out)
    return 0


def cmd_check(args, out) -> int:
    u, v = _word(args.u), _word(args.v)
    holds = satisfies(_variety(args.variety), u, v)
    print("HOLDS" if holds else "FAILS", file=out)
    return 0 if holds else 1


def cmd_freeband(args, out) -> int:
    V = _variety(args.variety)
    budget = _budget(args)
    if args.k < 1:
        raise UsageError("-k must be positive")
    if args.table:
        band = finite.free_band(V, args.k, budget)
        finite.dump_band(band, args.table)
        print(band.size, file=out)
    else:
        print(len(finite.free_band_elements(V, args.k, budget)), file=out)
    return 0


def _load_scheme(path):
    try:
        return schemes.load_scheme(path)
    except (OSError, ParseError, ValueError) as exc:
        raise UsageError(f"cannot read scheme {path}: {exc}") from None


def cmd_scheme_verify(args, out) -> int:
    S = _load_scheme(args.file)
    V = _variety(args.variety)
    report = schemes.check_scheme(S, V)
    essential = schemes.is_essential(S)
    try:
        pi = " ".join(map(str, schemes.associated_permutation(S, strict=False)))
    except schemes.SchemeError:
        pi = "none"
    yes = {True: "true", False: "false"}
    print(f"dependency: {yes[report.dependency]}", file=out)
    print(f"c1: {yes[report.c1]}", file=out)
    print(f"c2: {yes[report.c2]}", file=out)
    print(f"essential: {yes[essential]}", file=out)
    print(f"permutation: {pi}", file=out)
    for v in report.violations:
        print(f"violation {v.describe()}", file=out)
    return 0 if report.ok and essential else 1


def cmd_scheme_solve(args, out) -> int:
    S = _load_scheme(args.file)
    V = _variety(args.variety)
    try:
        w = schemes.solve_scheme(S, V)
    except NoSolution as exc:
        print("NO-SOLUTION", file=out)
        if exc.witness is not None:
            label, lhs, rhs = exc.witness
            print(f"witness {label}: {format_word(lhs, 'tokens')} = "
                  f"{format_word(rhs, 'tokens')}", file=out)
        else:
            print(f"reason: {exc}", file=out)
        return 1
    print(format_word(w, "tokens"), file=out)
    return 0


def _load_band(path):
    try:
        return finite.load_band(path)
    except (OSError, ParseError) as exc:
        raise UsageError(f"cannot read band {path}: {exc}") from None


def _assignment(text: str, band) -> dict:
    out = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"bad assignment {part!r}; expected letter=element")
        letters = _word(name.strip())
        if len(letters) != 1:
            raise UsageError(f"{name!r} is not a single letter")
        value = value.strip()
        # digits are indices; anything else is looked up among the names
        if value.isdigit():
            idx = int(value)
            if idx >= band.size:
                raise UsageError(f"element {idx} is outside 0..{band.size - 1}")
        elif value in band.names:
            idx = band.names.index(value)
        else:
            raise UsageError(f"unknown element {value!r}")
        out[letters[0]] = idx
    return out


def cmd_band(args, out) -> int:
    if args.action == "check":
        try:
            band = finite.load_band(args.file)
        except BandError as exc:
            print(f"NOT-A-BAND: {exc}", file=out)
            return 1
        except (OSError, ParseError) as exc:
            raise UsageError(f"cannot read band {args.file}: {exc}") from None
        print(f"OK: band of size {band.size}", file=out)
        return 0
    band = _load_band(args.file)
    if args.action == "eval":
        if not args.word or not args.assign:
            raise UsageError("band eval needs --word and --assign")
        w = _word(args.word)
        try:
            value = finite.eval_word(band, w, _assignment(args.assign, band))
        except finite.MissingAssignment as exc:
            raise UsageError(str(exc)) from None
        print(band.names[value], file=out)
        return 0
    if not args.op_file:
        raise UsageError("band induced needs --op-file")
    try:
        f = finite.load_operation(band, args.op_file)
    except (OSError, ParseError, ValueError) as exc:
        raise UsageError(f"cannot read operation {args.op_file}: {exc}") from None
    try:
        w = finite.induced_by_word(band, f, _budget(args))
    except NotInduced:
        print("NOT-INDUCED", file=out)
        return 1
    print(format_word(w, "tokens"), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandkit", description="Word problems, schemes and finite bands.")
    parser.add_argument("--budget", help="budget cap N, or cells=..,elements=..,"
                        "assignments=.. (default from BANDKIT_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="print the canonical invariant of a word")
    p.add_argument("word")
    p.add_argument("--variety", default="BAND")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("check", help="decide an identity u = v")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--variety", default="BAND")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("freeband", help="enumerate a relatively free band")
    p.add_argument("--variety", default="BAND")
    p.add_argument("-k", type=int, required=True, help="number of generators")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count-only", action="store_true")
    g.add_argument("--table", metavar="OUT", help="write the band file here")
    p.set_defaults(func=cmd_freeband)

    p = sub.add_parser("scheme-verify", help="check (D), (C1), (C2) for a scheme file")
    p.add_argument("file")
    p.add_argument("--variety", default="BAND")
    p.set_defaults(func=cmd_scheme_verify)

    p = sub.add_parser("scheme-solve", help="find a word a scheme comes from")
    p.add_argument("file")
    p.add_argument("--variety", required=True)
    p.set_defaults(func=cmd_scheme_solve)

    p = sub.add_parser("band", help="operations on band files")
    p.add_argument("action", choices=["check", "eval", "induced"])
    p.add_argument("file")
    p.add_argument("--word")
    p.add_argument("--assign", help="e.g. x=0,y=1 (element indices or names)")
    p.add_argument("--op-file", help='operation file {"arity": n, "values": [...]}')
    p.set_defaults(func=cmd_band)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"bandkit: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"bandkit: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"bandkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
