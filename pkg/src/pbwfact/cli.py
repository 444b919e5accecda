"""Command-line entry point: ``pbwfact <command> ...``.

Every command produces a :class:`~pbwfact.report.Report`.  The exit code is 0
when the report passes, 1 when it fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Sequence

from . import enveloping, factorization, lyndon, pbw, stuffle, trace
from .core import Alphabet, format_poly, format_rational, poly_to_json, tensor_to_json
from .report import Report

DEFAULT_DEGREE = 4

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {n}")
    return n


def positive(text: str) -> int:
    n = natural(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def alphabet_arg(text: str) -> Alphabet:
    try:
        return Alphabet(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def exit_code(report: Report) -> int:
    return EXIT_PASS if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands


def _word(alphabet: Alphabet, text: str):
    try:
        return alphabet.word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly_report(suite: str, alphabet: Alphabet, word_text: str, poly) -> Report:
    fmt = lambda w: alphabet.format(w)
    rep = Report(suite, {"alphabet": "".join(alphabet.letters), "word": word_text})
    rep.extra["value"] = format_poly(poly, fmt)
    rep.extra["terms"] = poly_to_json(poly, lambda w: alphabet.format(w) or "1")
    return rep


def cmd_lyndon_list(args, _map) -> Report:
    a = args.alphabet
    words = lyndon.lyndon_up_to(a, args.max_len)
    rep = Report("lyndon-list", {"alphabet": "".join(a.letters), "max_len": args.max_len})
    rep.checks_run = len(words)
    for w in words:
        if not lyndon.is_lyndon(w):
            rep.violation(a.format(w), "Lyndon", "not Lyndon")
    rep.extra["count"] = len(words)
    rep.extra["words"] = [a.format(w) for w in words]
    return rep


def cmd_pbw_show(args, _map) -> Report:
    w = _word(args.alphabet, args.word)
    rep = _poly_report("pbw-show", args.alphabet, args.word, pbw.pbw_P(w))
    rep.checks_run = 1
    if not pbw.check_triangular(w):
        rep.violation(f"P_{args.word}", "triangular", "not triangular")
    return rep


def cmd_dual_show(args, _map) -> Report:
    w = _word(args.alphabet, args.word)
    return _poly_report("dual-show", args.alphabet, args.word, pbw.dual_S(w))


def cmd_pbw_verify(args, _map) -> Report:
    rep = Report("pbw", {"alphabet": "".join(args.alphabet.letters), "max_len": args.max_len})
    rep.merge(pbw.check_duality(args.alphabet, args.max_len), "duality")
    rep.merge(pbw.check_triangular_all(args.alphabet, args.max_len), "triangularity")
    return rep


def cmd_verify_sf(args, _map) -> Report:
    rep = factorization.verify_sf(args.alphabet, args.degree, args.product_order)
    if args.emit_tensors:
        fmt = lambda w: args.alphabet.format(w) or "1"
        payload = {
            "parameters": rep.parameters,
            "lhs": tensor_to_json(rep.artifacts["lhs"], fmt),
            "rhs": tensor_to_json(rep.artifacts["rhs"], fmt),
        }
        Path(args.emit_tensors).write_text(json.dumps(payload, indent=1))
    return rep


def cmd_stuffle_verify(args, _map) -> Report:
    return stuffle.verify_stuffle(args.max_weight)


def cmd_stuffle_logstar(args, _map) -> Report:
    try:
        w = stuffle.parse_yword(args.word) if args.word.startswith("y") else (positive(args.word),)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(str(exc)) from None
    p = stuffle.log_star_identity(w)
    rep = Report("stuffle-logstar", {"word": stuffle.format_yword(w)})
    rep.checks_run = 1
    if not stuffle.is_primitive(p):
        rep.violation("primitivity", "primitive", "not primitive")
    rep.extra["value"] = stuffle.format_ypoly(p)
    rep.extra["terms"] = {stuffle.format_yword(u): format_rational(c) for u, c in p.sorted_items()}
    return rep


def cmd_trace_verify(args, _map) -> Report:
    a = args.alphabet
    try:
        theta = trace.Independence.parse(args.theta, a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return trace.verify_sf_trace(a, theta, args.degree, connected=not args.no_connectedness, order=args.product_order)


def cmd_lie_verify(args, map_fn) -> Report:
    try:
        g = enveloping.load_lie_algebra(args.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    if args.check == "radford":
        return enveloping.verify_radford_multiplicativity(g, args.degree, map_fn=map_fn)
    if args.check == "theorem1":
        return enveloping.verify_theorem1(g, args.degree, args.product_order, map_fn=map_fn)
    return enveloping.verify_theorem2(g, args.degree, args.family)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pbwfact", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--parallel", action="store_true", help="run independent checks concurrently")
    # the flags are accepted after the subcommand too; SUPPRESS keeps the
    # subparser from resetting a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--parallel", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def leaf(parent, name, func, help_text):
        q = parent.add_parser(name, parents=[common], help=help_text)
        q.set_defaults(func=func)
        return q

    def group(name, help_text):
        q = sub.add_parser(name, help=help_text)
        return q.add_subparsers(dest="action", required=True)

    ly = group("lyndon", "Lyndon words")
    q = leaf(ly, "list", cmd_lyndon_list, "list Lyndon words up to a length")
    q.add_argument("--alphabet", type=alphabet_arg, required=True)
    q.add_argument("--max-len", type=natural, default=DEFAULT_DEGREE)

    pb = group("pbw", "PBW basis of the free algebra")
    q = leaf(pb, "show", cmd_pbw_show, "print P_w")
    q.add_argument("--word", required=True)
    q.add_argument("--alphabet", type=alphabet_arg, default=None)
    q = leaf(pb, "verify", cmd_pbw_verify, "duality and triangularity")
    q.add_argument("--alphabet", type=alphabet_arg, required=True)
    q.add_argument("--max-len", type=natural, default=DEFAULT_DEGREE)

    du = group("dual", "dual family S_w")
    q = leaf(du, "show", cmd_dual_show, "print S_w")
    q.add_argument("--word", required=True)
    q.add_argument("--alphabet", type=alphabet_arg, default=None)

    ve = group("verify", "factorization identities")
    q = leaf(ve, "sf", cmd_verify_sf, "free factorization identity")
    q.add_argument("--alphabet", type=alphabet_arg, required=True)
    q.add_argument("--degree", type=natural, default=DEFAULT_DEGREE)
    q.add_argument("--product-order", choices=("decreasing", "increasing"), default="decreasing")
    q.add_argument("--emit-tensors", metavar="PATH", help="write both truncated tensors as JSON")

    st = group("stuffle", "quasi-shuffle algebra")
    q = leaf(st, "verify", cmd_stuffle_verify, "duality, Hopf axioms, primitives")
    q.add_argument("--max-weight", type=natural, default=DEFAULT_DEGREE)
    q = leaf(st, "logstar", cmd_stuffle_logstar, "log_* of the identity at a word")
    q.add_argument("--word", required=True, help="a Y-word such as y1y3, or a weight n for y_n")

    tr = group("trace", "partially commutative monoids")
    q = leaf(tr, "verify", cmd_trace_verify, "trace factorization identity")
    q.add_argument("--alphabet", type=alphabet_arg, required=True)
    q.add_argument("--theta", default="", help="commuting pairs, e.g. a,c or ac,bd; 'all' for every pair")
    q.add_argument("--degree", type=natural, default=3)
    q.add_argument("--product-order", choices=("decreasing", "increasing"), default="decreasing")
    q.add_argument("--no-connectedness", action="store_true")

    li = group("lie", "enveloping algebras")
    q = leaf(li, "verify", cmd_lie_verify, "Radford multiplicativity and the factorization theorems")
    q.add_argument("--config", required=True, help=f"JSON path or builtin ({', '.join(enveloping.BUILTIN_CONFIGS)})")
    q.add_argument("--degree", type=natural, default=DEFAULT_DEGREE)
    q.add_argument("--check", choices=("radford", "theorem1", "theorem2"), required=True)
    q.add_argument("--product-order", choices=("decreasing", "increasing"), default="decreasing")
    q.add_argument("--family", choices=("pbw", "perturbed"), default="pbw")
    return p


def _fill_alphabet(args) -> None:
    # show commands default to the letters of the word itself
    if getattr(args, "alphabet", "unset") is None:
        args.alphabet = Alphabet(sorted(set(args.word)))


@contextmanager
def _mapper(parallel: bool):
    if not parallel:
        yield map
        return
    with ThreadPoolExecutor() as pool:
        # Executor.map yields in submission order, so reports stay deterministic
        yield pool.map


def run(argv: Sequence[str] | None = None, out=None, err=None) -> tuple[int, Report | None]:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), None
    try:
        _fill_alphabet(args)
        with _mapper(args.parallel) as map_fn:
            report = args.func(args, map_fn)
    except (UsageError, ValueError) as exc:
        print(f"pbwfact: error: {exc}", file=err)
        return EXIT_USAGE, None
    if args.json:
        print(report.to_json(indent=2), file=out)
    else:
        print(report.summary(), file=out)
        for w in report.extra.get("words", ()):
            print(w, file=out)
    return exit_code(report), report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
