"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (non-trivial composition, oracle
mismatch, completion budget), 2 input or parse error, 3 fuel exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .gsb import BudgetExceeded, check_gsb, complete
from .rewrite import FuelExhausted, Status, TheoryError, dims, quotient_dims_oracle
from .term import ParseError, SignatureError, format_term, parse_word
from .poly import parse_poly
from .theoryfile import TheoryFileError, builtin_theory, dumps_theory, load_theory

OK, FAILED, BAD_INPUT, OUT_OF_FUEL = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _load(source: str, fuel: int | None):
    """A theory file path, or ``builtin:NAME`` for a builtin with default parameters."""
    try:
        if source.startswith("builtin:"):
            name, _, gens = source[len("builtin:"):].partition(":")
            th = builtin_theory(name, gens.split(",") if gens else ("x",))
        else:
            th = load_theory(source)
    except OSError as e:
        raise _InputError(f"cannot read {source}: {e.strerror or e}") from e
    if fuel is not None:
        if fuel < 1:
            raise _InputError("--fuel must be at least 1")
        th = th.with_options(fuel=fuel)
    return th


def cmd_normalize(args) -> int:
    th = _load(args.theory, args.fuel)
    f = parse_poly(args.poly, th.signature, th.field)
    nf, trace = th.engine.normal_form(f)
    if args.trace:
        print(trace.format())
    print(nf.format(th.order))
    if trace.status is Status.FUEL_EXHAUSTED:
        print("fuel exhausted", file=sys.stderr)
        return OUT_OF_FUEL
    return OK


def cmd_check(args) -> int:
    th = _load(args.theory, args.fuel)
    summary = check_gsb(th, args.bound, args.vbound, keep_reports=args.json)
    print(summary.dumps() if args.json else summary.format())
    if summary.nontrivial:
        return FAILED
    if summary.fuel_exhausted:
        return OUT_OF_FUEL
    return OK


def cmd_complete(args) -> int:
    th = _load(args.theory, args.fuel)
    try:
        done, log = complete(th, args.bound, args.vbound, args.max_rules)
    except BudgetExceeded as e:
        print(str(e), file=sys.stderr)
        return FAILED
    for step in log:
        print(f"round {step.round}: added {step.rule.name}: "
              f"{step.rule.describe(done.order)}  from {step.source}", file=sys.stderr)
    text = dumps_theory(done)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def cmd_dims(args) -> int:
    th = _load(args.theory, args.fuel)
    table = dims(th, args.max_size)
    if not args.oracle:
        print("size\tdim")
        for n, d in table.items():
            print(f"{n}\t{d}")
        return OK
    oracle = quotient_dims_oracle(th, args.max_size)
    print("size\tdim\toracle")
    for n, d in table.items():
        print(f"{n}\t{d}\t{oracle[n]}")
    if table != oracle:
        bad = [n for n in table if table[n] != oracle[n]]
        print(f"mismatch at sizes {', '.join(map(str, bad))}", file=sys.stderr)
        return FAILED
    return OK


def cmd_irr(args) -> int:
    th = _load(args.theory, args.fuel)
    words = th.engine.irreducible_words(args.size)
    if args.count_only:
        print(len(words))
    else:
        for w in words:
            print(format_term(w))
    return OK


def cmd_compare(args) -> int:
    th = _load(args.theory, args.fuel)
    u = parse_word(args.t1, th.signature)
    v = parse_word(args.t2, th.signature)
    print(th.order.compare(u, v).name)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shirshov",
        description="Groebner-Shirshov bases for Omega-algebras and L-algebras.",
        epilog="THEORY is a theory file (TOML) or builtin:NAME[:gen1,gen2] "
               "for l_identity or dialgebra.")
    p.add_argument("--fuel", type=int, default=None,
                   help="rewrite-step budget per reduction (overrides the file and SHIRSHOV_FUEL)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", help="print the normal form of a polynomial")
    s.add_argument("theory")
    s.add_argument("poly")
    s.add_argument("--trace", action="store_true", help="print every rewrite step")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("check", help="verify every composition within the bound")
    s.add_argument("theory")
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--vbound", type=int, default=3)
    s.add_argument("--json", action="store_true", help="full JSON report")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("complete", help="add rules until all compositions are trivial")
    s.add_argument("theory")
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--vbound", type=int, default=3)
    s.add_argument("--max-rules", type=int, default=100)
    s.add_argument("--out", help="write the completed theory file here instead of stdout")
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("dims", help="number of irreducible words per size")
    s.add_argument("theory")
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--oracle", action="store_true",
                   help="also compute quotient dimensions by exact row reduction")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("irr", help="list irreducible words of one size")
    s.add_argument("theory")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_irr)

    s = sub.add_parser("compare", help="compare two words in the theory's order")
    s.add_argument("theory")
    s.add_argument("t1")
    s.add_argument("t2")
    s.set_defaults(func=cmd_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    for name in ("bound", "vbound", "max_size", "size"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be at least 1", file=sys.stderr)
            return BAD_INPUT
    if getattr(args, "max_rules", 0) < 0:
        print("error: --max-rules must be non-negative", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.func(args)
    except FuelExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return OUT_OF_FUEL
    except (_InputError, TheoryFileError, ParseError, SignatureError, TheoryError,
            ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
