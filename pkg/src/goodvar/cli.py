"""Command-line interface: ``goodvar <command> ...``.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.  Errors are
printed to stderr as ``<ErrorClass>: <message>`` on one line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import numbertheory as nt
from .chern import format_class, milnor_number, parse_class
from .errors import GoodvarError, InvalidFan, VerificationFailed
from .expr import ParseError, evaluate_text, product_varieties
from .realization import (
    GoodProduct,
    parse_realization,
    realize,
    torus_rank,
    verify_realization,
)
from .ring import (
    BLOWUP_POOLS,
    DEFAULT_MAX_DIM,
    MODES,
    ClassCoordinates,
    build_generator_system,
    compose,
    decompose,
)
from .toric import Fan, blow_up, toric_chern_vector, validate_fan


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load_class(args):
    if args.class_file and args.expr:
        raise UsageError("give either an expression or --class, not both")
    if args.class_file:
        try:
            return parse_class(_read(args.class_file))
        except ValueError as exc:
            raise UsageError(f"{args.class_file}: {exc}") from None
    if args.expr:
        return evaluate_text(args.expr)
    raise UsageError("an expression or --class file is required")


def _load_fan(path: str) -> Fan:
    try:
        return Fan.from_json(_read(path))
    except (ValueError, TypeError) as exc:
        raise InvalidFan(f"{path}: {exc}") from None


def cmd_eta(args):
    print(nt.eta(args.n))


def cmd_kummer(args):
    print(nt.kummer_carries(args.i, args.j, args.p))


def cmd_gcd_check(args):
    r = nt.gcd_generator_check(args.n, args.min_i)
    print(f"{r.to_line()} pass={'yes' if r.passed else 'no'}")
    for i, b in r.witnesses:
        print(f"  {'n+1' if i == 0 else f'binom({args.n + 1},{i})'} = {b}")
    if r.empty_range:
        print(f"  no i with {args.min_i} <= i <= (n+1)/2")


def cmd_gcd_scan(args):
    failures = nt.scan_gcd_exceptions(args.max, args.min_i, args.parity)
    if args.json:
        payload = {
            "max": args.max,
            "min_i": args.min_i,
            "parity": args.parity,
            "failures": [r.to_json() for r in failures],
        }
        print(json.dumps(payload, sort_keys=True))
        return
    for r in failures:
        print(r.to_line())
    print(f"summary: {len(failures)} failure(s) for {args.parity} n <= {args.max}, i >= {args.min_i}")


def cmd_chern(args):
    sys.stdout.write(format_class(evaluate_text(args.expr), args.basis))


def cmd_milnor(args):
    print(milnor_number(evaluate_text(args.expr)))


def cmd_toric_chern(args):
    sys.stdout.write(format_class(toric_chern_vector(_load_fan(args.fan)), args.basis))


def cmd_toric_blowup(args):
    fan = _load_fan(args.fan)
    problems = validate_fan(fan)
    if problems:
        raise InvalidFan("; ".join(problems))
    try:
        result = blow_up(fan, args.cone)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    _write_or_print(result.to_json() + "\n", args.output)


def cmd_toric_validate(args):
    problems = validate_fan(_load_fan(args.fan))
    if problems:
        for p in problems:
            print(f"violation: {p}")
        raise InvalidFan(f"{len(problems)} violation(s)")
    print("ok")


def cmd_generators(args):
    sys.stdout.write(build_generator_system(args.max_dim, args.mode, args.blowups).report())


def cmd_decompose(args):
    v = _load_class(args)
    gs = build_generator_system(max(args.max_dim, v.dim), args.mode, args.blowups)
    sys.stdout.write(decompose(v, gs).to_text())


def cmd_compose(args):
    try:
        coords = ClassCoordinates.from_text(_read(args.coords))
    except ValueError as exc:
        raise UsageError(f"{args.coords}: {exc}") from None
    gs = build_generator_system(max(args.max_dim, coords.dim, 1), args.mode, args.blowups)
    gs.require(coords.dim)
    sys.stdout.write(format_class(compose(coords, gs)))


def cmd_realize(args):
    v = _load_class(args)
    r = realize(v, mode=args.mode, blowups=args.blowups)
    report = verify_realization(r, v)
    _write_or_print(r.to_text(verified=report.ok), args.output)
    if not report.ok:
        raise VerificationFailed("realization does not reproduce the class")


def cmd_verify(args):
    try:
        r = parse_realization(_read(args.realization))
        v = parse_class(_read(args.class_file))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = verify_realization(r, v)
    sys.stdout.write(report.to_text())
    if not report.ok:
        raise VerificationFailed("see report above")


def cmd_obstruction(args):
    sys.stdout.write(nt.choose_torus_rank(args.n).to_text())


def cmd_torus_rank(args):
    p = GoodProduct(tuple(product_varieties(args.product)))
    print(torus_rank(p))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goodvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", help="eta(n): p if n+1 is a power of the prime p, else 1")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("kummer", help="carries adding i and j in base p")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("gcd-check", help="gcd of n+1 and binom(n+1, i) versus eta(n)")
    p.add_argument("n", type=int)
    p.add_argument("--min-i", type=int, choices=(2, 4), default=2)
    p.set_defaults(func=cmd_gcd_check)

    p = sub.add_parser("gcd-scan", help="list n where the gcd check fails")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--min-i", type=int, choices=(2, 4), default=2)
    p.add_argument("--parity", choices=("even", "odd", "all"), default="even")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gcd_scan)

    for name, func, helptext in (
        ("chern", cmd_chern, "Chern numbers of a class expression"),
        ("milnor", cmd_milnor, "Milnor number s_n of a class expression"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("expr")
        if name == "chern":
            p.add_argument("--basis", choices=("c", "m"), default="c")
        p.set_defaults(func=func)

    toric = sub.add_parser("toric", help="smooth complete fans")
    tsub = toric.add_subparsers(dest="toric_command", required=True)
    p = tsub.add_parser("chern", help="Chern numbers by localization")
    p.add_argument("--fan", required=True)
    p.add_argument("--basis", choices=("c", "m"), default="c")
    p.set_defaults(func=cmd_toric_chern)
    p = tsub.add_parser("blowup", help="blow up the fixed point of a maximal cone")
    p.add_argument("--fan", required=True)
    p.add_argument("--cone", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_toric_blowup)
    p = tsub.add_parser("validate", help="check smoothness and completeness")
    p.add_argument("--fan", required=True)
    p.set_defaults(func=cmd_toric_validate)

    def ring_options(p, default_mode):
        p.add_argument("--mode", choices=MODES + (("auto",) if default_mode == "strict" else ()), default=default_mode)
        p.add_argument("--blowups", choices=BLOWUP_POOLS, default="subspaces")

    p = sub.add_parser("generators", help="report the generator system")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    ring_options(p, "relaxed")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("decompose", help="coordinates over generator monomials")
    p.add_argument("expr", nargs="?")
    p.add_argument("--class", dest="class_file")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    ring_options(p, "relaxed")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", help="class from generator coordinates")
    p.add_argument("--coords", required=True)
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    ring_options(p, "relaxed")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("realize", help="disjoint union of good varieties representing a class")
    p.add_argument("expr", nargs="?")
    p.add_argument("--class", dest="class_file")
    p.add_argument("-o", "--output")
    ring_options(p, "strict")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="check a realization file against a class file")
    p.add_argument("--realization", required=True)
    p.add_argument("--class", dest="class_file", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("obstruction", help="torus rank k and Bott obstruction for dimension n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("torus-rank", help="torus rank of a product of good varieties")
    p.add_argument("product")
    p.set_defaults(func=cmd_torus_rank)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    except GoodvarError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
