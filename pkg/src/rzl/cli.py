"""Command-line front end.

Verbs: eval, der, permeate, continuity, converge, classify, inverse.
Running with no verb starts a line-oriented read-eval-print loop on stdin.

Exit status: 0 for values and certified verdicts, 2 for refuted, 3 for
unknown, 1 for any error.  ``--format json`` emits one stable JSON object
on stdout with exact fraction strings for coefficients.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import expr as E
from .calculus import evaluate, permeate
from .continuity import ContinuityQuery, GridBudget, check_kn_continuity
from .convergence import (
    RzlSequence,
    cc_check,
    hc_check,
    hyper_cauchy_check,
    rc_check,
)
from .number import DEFAULT_DEPTH, RzlNumber, inverse, zero
from .order import classify as classify_number
from .parser import ParseError, parse, parse_sequence
from .render import DEFAULT_EPS_DIGITS, render
from .scalar import scalar_str
from .verdict import DomainError, UndecidedError, Verdict, VerdictState

_EXIT = {VerdictState.CERTIFIED: 0, VerdictState.REFUTED: 2,
         VerdictState.UNKNOWN: 3}


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, bool)):
        return obj
    if isinstance(obj, Fraction):
        return scalar_str(obj)
    if isinstance(obj, RzlNumber):
        return render(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, VerdictState):
        return obj.value
    return str(obj)


def _number_json(x: RzlNumber, eps_digits: int) -> dict:
    return {
        "low": x.low,
        "finite_support": x.finite_support,
        "coefficients": [{"index": i, "value": scalar_str(x[i])}
                         for i in range(x.low, eps_digits)],
        "rendered": render(x, eps_digits),
    }


def _verdict_json(v: Verdict) -> dict:
    return {
        "state": v.state.value,
        "depth_used": v.depth_used,
        "witness": _jsonable(v.witness),
        "value": _jsonable(v.value),
        "reason": v.reason,
        "caveat": v.caveat,
    }


def _point_from(text: str, depth: int) -> RzlNumber:
    node = parse(text)
    if isinstance(node, RzlNumber):
        return node
    if E.contains(node, E.Var):
        raise DomainError("evaluation point must not contain the variable")
    return evaluate(node, zero(), depth)


def _function_from(text: str) -> E.Expr:
    node = parse(text)
    if isinstance(node, RzlNumber):
        raise DomainError("expected an expression, got a coefficient literal")
    return node


def _emit(report: dict, text_lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report))
    else:
        for line in text_lines:
            print(line)


def _common(sub):
    sub.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    sub.add_argument("--eps-digits", type=int, default=DEFAULT_EPS_DIGITS)
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--grossone", action="store_true",
                     help="echo the infinite unit as the circled-one symbol")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rzl",
        description="exact arithmetic with infinitesimal and infinite parts")
    subs = ap.add_subparsers(dest="command")

    p = subs.add_parser("eval", help="evaluate an expression")
    p.add_argument("expression")
    p.add_argument("--at", default=None, help="evaluation point (expression)")
    _common(p)

    p = subs.add_parser("der", help="quotient derivative at a point")
    p.add_argument("expression")
    p.add_argument("--at", default="0")
    _common(p)

    p = subs.add_parser("permeate", help="derivative report with permeation")
    p.add_argument("expression")
    p.add_argument("--at", default="0")
    _common(p)

    p = subs.add_parser("continuity", help="graded (k,n) continuity check")
    p.add_argument("expression")
    p.add_argument("--at", default="0")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    _common(p)

    p = subs.add_parser("converge", help="sequence convergence checks")
    p.add_argument("mode", choices=("cc", "hc", "rc", "cauchy"))
    p.add_argument("--seq", required=True, help="term expression in n")
    p.add_argument("--limit", default="0")
    p.add_argument("--radius", action="append", default=None,
                   help="radius expression (repeatable; hc and cauchy)")
    p.add_argument("--terms", type=int, default=24)
    p.add_argument("--indices", type=int, default=16)
    _common(p)

    p = subs.add_parser("classify", help="infinitesimal / appreciable / infinite")
    p.add_argument("expression")
    _common(p)

    p = subs.add_parser("inverse", help="multiplicative inverse")
    p.add_argument("expression")
    p.add_argument("--at", default=None)
    _common(p)

    return ap


def _run_eval(args) -> int:
    node = parse(args.expression)
    if isinstance(node, RzlNumber):
        value = node
        echo = args.expression.strip()
    else:
        point = _point_from(args.at, args.depth) if args.at else zero()
        value = evaluate(node, point, args.depth)
        echo = E.to_text(node, grossone=args.grossone)
    rendered = render(value, args.eps_digits)
    report = {"command": "eval", "echo": echo,
              "result": _number_json(value, args.eps_digits),
              "verdict": None, "error": None}
    lines = ([echo] if args.grossone else []) + [rendered]
    _emit(report, lines, args.format)
    return 0


def _run_der(args, with_permeation: bool) -> int:
    f = _function_from(args.expression)
    point = _point_from(args.at, args.depth)
    rep = permeate(f, point, args.depth)
    echo = E.to_text(f, grossone=args.grossone)
    report = {
        "command": "permeate" if with_permeation else "der",
        "echo": echo,
        "result": _number_json(rep.der_value, args.eps_digits),
        "report": {
            "standard_part": scalar_str(rep.standard_part),
            "classical_value": None if rep.classical_value is None
            else scalar_str(rep.classical_value),
            "in_E": _verdict_json(rep.in_e),
            "permeated": None if rep.permeated is None
            else scalar_str(rep.permeated),
            "reason": rep.reason,
        },
        "verdict": _verdict_json(rep.in_e),
        "error": None,
    }
    lines = [f"der = {render(rep.der_value, args.eps_digits)}",
             f"standard part = {scalar_str(rep.standard_part)}"]
    if rep.permeated is not None:
        lines.append(f"permeated = {scalar_str(rep.permeated)}")
    else:
        lines.append(f"permeated: absent ({rep.reason})")
    _emit(report, lines, args.format)
    if with_permeation:
        return _EXIT[rep.in_e.state]
    return 0


def _run_continuity(args) -> int:
    f = _function_from(args.expression)
    point = _point_from(args.at, args.depth)
    v = check_kn_continuity(ContinuityQuery(f, point, args.k, args.n,
                                            GridBudget()), args.depth)
    report = {"command": "continuity", "echo": E.to_text(f, grossone=args.grossone),
              "k": args.k, "n": args.n,
              "verdict": _verdict_json(v), "error": None}
    lines = [f"({args.k},{args.n})-continuity: {v.state.value}"]
    if v.reason:
        lines.append(f"  reason: {v.reason}")
    _emit(report, lines, args.format)
    return _EXIT[v.state]


def _run_converge(args) -> int:
    term = parse_sequence(args.seq)
    seq = RzlSequence(term, description=args.seq)
    limit = _point_from(args.limit, args.depth)
    radii_text = args.radius if args.radius else ["eps"]
    radii = [_point_from(t, args.depth) for t in radii_text]
    if args.mode == "cc":
        v = cc_check(seq, limit, args.terms, args.depth)
    elif args.mode == "hc":
        v = hc_check(seq, limit, radii, args.terms, args.depth)
    elif args.mode == "rc":
        v = rc_check(seq, limit, args.terms, args.indices, args.depth)
    else:
        v = hyper_cauchy_check(seq, radii, args.terms, args.depth,
                               limit_hint=limit)
    report = {"command": f"converge {args.mode}", "sequence": args.seq,
              "limit": args.limit, "radii": radii_text,
              "terms": args.terms, "indices": args.indices,
              "verdict": _verdict_json(v), "error": None}
    lines = [f"{args.mode}: {v.state.value}"]
    if v.reason:
        lines.append(f"  reason: {v.reason}")
    if v.caveat:
        lines.append(f"  caveat: {v.caveat}")
    _emit(report, lines, args.format)
    return _EXIT[v.state]


def _run_classify(args) -> int:
    node = parse(args.expression)
    value = node if isinstance(node, RzlNumber) \
        else evaluate(node, zero(), args.depth)
    v = classify_number(value, args.depth)
    report = {"command": "classify",
              "result": _number_json(value, args.eps_digits),
              "verdict": _verdict_json(v), "error": None}
    lines = [v.value if v.is_certified else f"unknown ({v.reason})"]
    _emit(report, lines, args.format)
    return _EXIT[v.state]


def _run_inverse(args) -> int:
    node = parse(args.expression)
    value = node if isinstance(node, RzlNumber) \
        else evaluate(node, _point_from(args.at, args.depth)
                      if args.at else zero(), args.depth)
    inv = inverse(value, args.depth)
    report = {"command": "inverse",
              "result": _number_json(inv, args.eps_digits),
              "verdict": None, "error": None}
    _emit(report, [render(inv, args.eps_digits)], args.format)
    return 0


def _repl() -> int:
    print("rzl calculator; expressions in x, eps, w; :q quits", file=sys.stderr)
    while True:
        try:
            line = input("rzl> ")
        except EOFError:
            return 0
        line = line.strip()
        if not line:
            continue
        if line in (":q", ":quit", "quit", "exit"):
            return 0
        try:
            node = parse(line)
            value = node if isinstance(node, RzlNumber) \
                else evaluate(node, zero())
            print(render(value))
        except (ParseError, UndecidedError, DomainError, ValueError,
                ZeroDivisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.command is None:
        return _repl()
    try:
        if args.command == "eval":
            return _run_eval(args)
        if args.command == "der":
            return _run_der(args, with_permeation=False)
        if args.command == "permeate":
            return _run_der(args, with_permeation=True)
        if args.command == "continuity":
            return _run_continuity(args)
        if args.command == "converge":
            return _run_converge(args)
        if args.command == "classify":
            return _run_classify(args)
        if args.command == "inverse":
            return _run_inverse(args)
        ap.error(f"unknown command {args.command!r}")
    except (ParseError, UndecidedError, DomainError, ValueError,
            ZeroDivisionError) as exc:
        fmt = getattr(args, "format", "text")
        if fmt == "json":
            print(json.dumps({"command": args.command, "error": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
