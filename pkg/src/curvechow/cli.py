"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import chow
from .chow import AmbientError, ChowClass
from .dsl import DSLError, DSLSyntaxError, evaluate, parse
from .poly import RatPoly
from .stability import bogomolov_gap, classify_slope, moduli_expected_dim
from .taut import discriminant
from .verify import run_verification


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _assignment(args) -> dict[str, Fraction]:
    return {k: getattr(args, k) for k in ("g", "d", "r") if getattr(args, k, None) is not None}


def _substitute(value, assignment):
    if not assignment:
        return value
    if isinstance(value, RatPoly):
        return value.substitute(assignment)
    return ChowClass(value.n, {c: v.substitute(assignment) for c, v in value.terms.items()})


def _result(value) -> dict:
    if isinstance(value, RatPoly):
        return {"kind": "poly", "text": str(value), "terms": value.to_json_terms()}
    if isinstance(value, ChowClass):
        return {"kind": "class", "text": str(value), "terms": value.to_json_terms()}
    raise TypeError(value)


def cmd_intersect(args) -> tuple[dict, int]:
    try:
        ast = parse(args.expr)
    except DSLSyntaxError as exc:
        raise UsageError(f"{exc}\n  {args.expr}\n  {' ' * exc.position}^") from None
    value = evaluate(ast, args.n)
    return {"n": args.n, "expr": args.expr, "result": _result(_substitute(value, _assignment(args)))}, 0


def cmd_discriminant(args) -> tuple[dict, int]:
    if args.r is not None and args.r <= 0:
        raise UsageError("rank must be positive")
    value = discriminant(args.n, mode=args.mode).substitute(_assignment(args))
    expr = f"discriminant({args.mode})"
    return {"n": args.n, "expr": expr, "result": _result(value)}, 0


def cmd_stability(args) -> tuple[dict, int]:
    verdict = classify_slope(args.n, args.g, args.mu)
    gap = bogomolov_gap(args.n, args.g)
    out = {
        "n": args.n,
        "expr": f"stability(g={args.g}, mu={args.mu})",
        "result": {"kind": "verdict", "text": str(verdict), "terms": verdict.to_json()},
        "gap": None if gap is None else {"kind": "interval", "text": str(gap), "terms": gap.to_json()},
    }
    return out, 0


def cmd_moduli_dim(args) -> tuple[dict, int]:
    dim, chi = moduli_expected_dim(args.g, args.r, args.d)
    out = {
        "n": 2,
        "expr": f"moduli_dim(g={args.g}, r={args.r}, d={args.d})",
        "result": _result(RatPoly.const(dim)),
        "chi": str(chi),
    }
    return out, 0


def cmd_verify(args) -> tuple[dict, int]:
    try:
        report = run_verification(args.max_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return report, 0 if report.passed else 1


def _text(out) -> str:
    if hasattr(out, "to_text"):
        return out.to_text()
    lines = [out["result"]["text"]]
    if out.get("gap") is not None:
        lines.append(f"bogomolov gap: {out['gap']['text']}")
    if "chi" in out:
        lines.append(f"chi(O): {out['chi']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="FILE", help="also write the JSON output to FILE")
    common.add_argument("--max-ambient", type=int, default=None,
                        help=f"override the cap on n (default {chow.config.max_n})")

    parser = argparse.ArgumentParser(prog="curvechow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("intersect", parents=[common], help="evaluate an expression on C^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expr", required=True)
    for s in ("g", "d", "r"):
        p.add_argument(f"--{s}", type=_fraction)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("discriminant", parents=[common], help="discriminant pairing with H^(n-2)")
    p.add_argument("--n", type=int, required=True)
    for s in ("g", "d", "r"):
        p.add_argument(f"--{s}", type=_fraction)
    p.add_argument("--mode", choices=("engine", "closed"), default="engine")
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("stability", parents=[common], help="classify a slope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--mu", type=_fraction, required=True, help="slope as P/Q")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("moduli-dim", parents=[common], help="expected dimension for n = 2")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_moduli_dim)

    p = sub.add_parser("verify", parents=[common], help="re-derive all identities up to n")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_ambient is not None:
        chow.config.max_n = args.max_ambient
    try:
        out, status = args.func(args)
    except (UsageError, DSLError, AmbientError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = out.to_json() if hasattr(out, "to_json") else out
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_text(out))
    return status


if __name__ == "__main__":
    sys.exit(main())
