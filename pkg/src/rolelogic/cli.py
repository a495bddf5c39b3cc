"""Command-line interface: ``rolelogic <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import BudgetExceeded, ParseError, RoleLogicError, TranslationBudgetExceeded

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "ROLELOGIC_BUDGET"


class UsageError(Exception):
    pass


def _default_seconds() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return 60.0
    try:
        v = float(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a number of seconds, got {raw!r}") from None
    if v <= 0:
        raise UsageError(f"{BUDGET_ENV} must be positive")
    return v


def _read(arg: str, inline: bool) -> tuple[str, str]:
    if inline:
        return arg, "<expr>"
    if arg == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(arg).read_text(encoding="utf-8"), arg
    except OSError as e:
        raise UsageError(f"cannot read {arg}: {e.strerror}") from None


def _emit(args, text: str, data: dict):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _load_formula(args, which: str = "input"):
    from .frontend import parse_fo, parse_formula

    text, name = _read(getattr(args, which), args.expr)
    if getattr(args, "from_", "rl") == "fo":
        return parse_fo(text, name)
    return parse_formula(text, name)


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    from .core import convention_context, eval_formula, free_names
    from .formula import rel_arity
    from .frontend import parse_formula, parse_structure
    from .structure import Env

    text, name = _read(args.input, args.expr)
    f = parse_formula(text, name)
    stext, sname = _read(args.structure, False)
    s = parse_structure(stext, sname)
    # names the structure does not mention denote empty relations
    conv = convention_context(f)
    missing_u = [n for n in free_names(f) if n not in s.unary and n not in s.binary
                 and rel_arity(conv.get(n)) == 1]
    missing_b = [n for n in free_names(f) if n not in s.unary and n not in s.binary
                 and rel_arity(conv.get(n)) == 2]
    s = s.with_vocabulary(missing_u, missing_b)
    stack = tuple(int(x) for x in args.stack.split(",")) if args.stack else ()
    v = eval_formula(f, s, Env(stack))
    if not isinstance(v, bool):
        raise UsageError("formula does not denote a truth value; supply --stack")
    _emit(args, "true" if v else "false", {"value": v})
    return EXIT_OK


def cmd_translate(args) -> int:
    from .fo import FO
    from .frontend import pretty
    from .rl2 import coerce_rl2
    from .translate import (
        alternate, alternate_satpreserving, c2_to_i2, c2_to_rl2, d2_to_c2,
        ensure_counting_condition, four_corner, rl2_to_d2,
    )

    f = _load_formula(args)
    defs: list = []
    if isinstance(f, FO):
        d2 = f
    else:
        r = coerce_rl2(f)
        if args.to == "rl2" and not args.sat_preserving:
            out = four_corner(r)
            _emit(args, pretty(out), {"target": "rl2", "formula": pretty(out)})
            return EXIT_OK
        d2 = rl2_to_d2(r)
    if args.to == "d2":
        out = d2
    else:
        c2, ren = d2_to_c2(ensure_counting_condition(d2), with_renaming=True)
        if args.to == "c2":
            out = c2
        else:
            if args.sat_preserving:
                alt, defs = alternate_satpreserving(c2)
            else:
                alt = alternate(c2)
            env = {ren[v]: i for v, i in (("y1", 1), ("y2", 2)) if v in ren}
            out = c2_to_i2(alt, env or None) if args.to == "i2" else c2_to_rl2(alt, env)
    lines = [pretty(out)] + [pretty(d) for d in defs]
    _emit(args, "\n".join(lines),
          {"target": args.to, "formula": pretty(out), "definitions": [pretty(d) for d in defs]})
    return EXIT_OK


def _model_text(s, witness=None) -> str:
    from .frontend import pretty_structure

    text = pretty_structure(s)
    if witness:
        text += "// witness: " + ", ".join(f"{k}={v}" for k, v in sorted(witness.items())) + "\n"
    return text


def cmd_sat(args) -> int:
    from .solver.bounded import BUDGET, SAT, check_sat_bounded

    f = _load_formula(args)
    r = check_sat_bounded(f, args.bound, seconds=args.seconds)
    data = {"verdict": r.verdict, "bound": r.bound, "model": None}
    text = str(r)
    if r.verdict == SAT:
        data["model"] = _model_text(r.structure)
        text += "\n" + _model_text(r.structure, r.witness).rstrip()
    elif r.verdict == BUDGET:
        text = f"budget exceeded at size {r.bound}: {r.message}"
    _emit(args, text, data)
    return {SAT: EXIT_OK, BUDGET: EXIT_BUDGET}.get(r.verdict, EXIT_NEGATIVE)


def cmd_valid(args) -> int:
    from .solver.bounded import BUDGET, check_valid_bounded

    f = _load_formula(args)
    r = check_valid_bounded(f, args.bound, seconds=args.seconds)
    data = {"verdict": r.verdict, "bound": r.bound, "counterexample": None}
    if r.verdict == "Counterexample":
        data["counterexample"] = _model_text(r.counterexample)
        text = f"counterexample at size {r.bound}\n" + _model_text(r.counterexample, r.witness).rstrip()
    elif r.verdict == BUDGET:
        text = f"budget exceeded at size {r.bound}: {r.message}"
    else:
        text = str(r)
    _emit(args, text, data)
    return {"ValidUpToBound": EXIT_OK, BUDGET: EXIT_BUDGET}.get(r.verdict, EXIT_NEGATIVE)


def cmd_verify(args) -> int:
    from .frontend import parse_program, pretty_structure
    from .verify import check_claim

    text, name = _read(args.input, False)
    prog = parse_program(text, name)
    results = []
    for claim in sorted(prog.claims, key=lambda c: f"{c[0]} => {c[1]}"):
        results.append(check_claim(prog, claim, args.bound, strict_assert=args.strict_assert,
                                   seconds=args.seconds))
    records = []
    lines = []
    for r in results:
        rec = {"name": r.name, "verdict": r.verdict, "bound": r.bound,
               "seconds": 0.0 if args.no_timing else round(r.seconds, 3),
               "counterexample": None}
        line = f"{r.name}: {r.verdict}"
        line += f" (bound {r.bound})" if r.verdict != "Counterexample" else f" at size {r.bound}"
        if r.verdict == "Counterexample":
            pre, post = pretty_structure(r.pre), pretty_structure(r.post)
            rec["counterexample"] = {"pre": pre, "post": post}
            out_dir = Path(args.cex_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            stem = f"{r.impl}__{r.spec}"
            (out_dir / f"{stem}.pre.struct").write_text(pre, encoding="utf-8")
            (out_dir / f"{stem}.post.struct").write_text(post, encoding="utf-8")
            line += f"; counterexample written to {out_dir / stem}.{{pre,post}}.struct"
            line += "\n  pre-state:\n    " + pre.rstrip().replace("\n", "\n    ")
            line += "\n  post-state:\n    " + post.rstrip().replace("\n", "\n    ")
        elif r.verdict == "Inconclusive":
            line += f": {r.message}"
        records.append(rec)
        lines.append(line)
    _emit(args, "\n".join(lines) if lines else "no claims",
          {"program": name, "bound": args.bound, "claims": records})
    verdicts = {r.verdict for r in results}
    if "Counterexample" in verdicts:
        return EXIT_NEGATIVE
    if "Inconclusive" in verdicts:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_dl(args) -> int:
    from . import dl
    from .frontend import parse_concept, parse_dl_query, parse_role, pretty
    from .solver.bounded import BUDGET, SAT

    text, name = _read(args.input, args.expr)
    if args.action == "translate":
        try:
            t = parse_concept(text, name)
        except ParseError:
            t = parse_role(text, name)
        try:
            out = pretty(dl.dl_to_rl2(t))
            target = "rl2"
        except RoleLogicError:
            if not args.full:
                raise
            out = pretty(dl.dl_to_full(t))
            target = "full"
        _emit(args, out, {"target": target, "formula": out})
        return EXIT_OK
    if args.action == "sat":
        r = dl.concept_satisfiable(parse_concept(text, name), args.bound, seconds=args.seconds)
        data = {"verdict": r.verdict, "bound": r.bound,
                "model": _model_text(r.structure) if r.verdict == SAT else None}
        text = str(r)
        if r.verdict == SAT:
            text += "\n" + _model_text(r.structure, r.witness).rstrip()
        _emit(args, text, data)
        return {SAT: EXIT_OK, BUDGET: EXIT_BUDGET}.get(r.verdict, EXIT_NEGATIVE)
    c, d = parse_dl_query(text, name)
    if d is None:
        raise UsageError("subsume expects a query of the form 'C [= D'")
    r = dl.subsumes(c, d, args.bound, seconds=args.seconds)
    data = {"verdict": r.verdict, "bound": r.bound,
            "counterexample": _model_text(r.counterexample) if r.counterexample else None}
    text = f"subsumed up to bound {r.bound}" if r.verdict == "ValidUpToBound" else str(r.verdict)
    if r.counterexample is not None:
        text = f"not subsumed: counterexample at size {r.bound}\n" + _model_text(
            r.counterexample, r.witness).rstrip()
    _emit(args, text, data)
    return {"ValidUpToBound": EXIT_OK, BUDGET: EXIT_BUDGET}.get(r.verdict, EXIT_NEGATIVE)


def cmd_classify(args) -> int:
    from .rl2 import coerce_rl2, is_bsac

    r = coerce_rl2(_load_formula(args))
    ok = is_bsac(r)
    _emit(args, "BSAC" if ok else "not BSAC", {"bsac": ok})
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    common.add_argument("-e", "--expr", action="store_true",
                        help="treat the input argument as literal text instead of a path")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--bound", type=int, default=3, help="largest universe size (default: 3)")
    budget.add_argument("--seconds", type=float, default=None,
                        help=f"time budget in seconds (default: 60, or ${BUDGET_ENV})")

    p = argparse.ArgumentParser(prog="rolelogic", description="Role logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a formula in a structure")
    e.add_argument("input")
    e.add_argument("structure")
    e.add_argument("--stack", help="comma-separated stack contents, #1 first")
    e.set_defaults(fn=cmd_eval)

    t = sub.add_parser("translate", parents=[common], help="translate an RL2 formula")
    t.add_argument("input")
    t.add_argument("--to", choices=("d2", "c2", "i2", "rl2"), required=True)
    t.add_argument("--from", dest="from_", choices=("rl", "fo"), default="rl")
    t.add_argument("--sat-preserving", action="store_true",
                   help="alternate with fresh unary predicates instead of case splits")
    t.set_defaults(fn=cmd_translate)

    for name, fn, helptext in (("sat", cmd_sat, "bounded satisfiability"),
                               ("valid", cmd_valid, "bounded validity")):
        s = sub.add_parser(name, parents=[common, budget], help=helptext)
        s.add_argument("input")
        s.add_argument("--from", dest="from_", choices=("rl", "fo"), default="rl")
        s.set_defaults(fn=fn)

    v = sub.add_parser("verify", parents=[common, budget], help="check the claims of a program")
    v.add_argument("input")
    v.add_argument("--strict-assert", action="store_true",
                   help="a failing assert also sets the error predicate")
    v.add_argument("--cex-dir", default="counterexamples",
                   help="directory for counterexample structures (default: counterexamples)")
    v.add_argument("--no-timing", action="store_true", help="report 0.0 for all timings")
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("dl", parents=[common, budget], help="description-logic queries")
    d.add_argument("action", choices=("translate", "sat", "subsume"))
    d.add_argument("input")
    d.add_argument("--full", action="store_true",
                   help="allow comp/star by translating into full role logic")
    d.set_defaults(fn=cmd_dl)

    c = sub.add_parser("classify-bsac", parents=[common], help="is the formula in BSAC?")
    c.add_argument("input")
    c.set_defaults(fn=cmd_classify, from_="rl")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if getattr(args, "bound", 0) < 0:
            raise UsageError("--bound must be non-negative")
        if hasattr(args, "seconds"):
            if args.seconds is None:
                args.seconds = _default_seconds()
            elif args.seconds <= 0:
                raise UsageError("--seconds must be positive")
        return args.fn(args)
    except UsageError as e:
        print(f"rolelogic: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, TranslationBudgetExceeded) as e:
        print(f"rolelogic: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as e:
        print(f"rolelogic: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RoleLogicError as e:
        print(f"rolelogic: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
