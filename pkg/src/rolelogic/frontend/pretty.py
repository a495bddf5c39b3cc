"""Printers whose output parses back to the same tree."""

from __future__ import annotations

from .. import formula as F
from ..formula import Arrow, BoolType, ObjType, Type

_BIN = {  # class -> (symbol, own precedence, left precedence, right precedence)
    F.Iff: ("<=>", 1, 1, 2),
    F.Implies: ("=>", 2, 3, 2),
    F.Or: ("|", 3, 3, 4),
    F.And: ("&", 4, 4, 5),
    F.SetMinus: ("\\", 5, 5, 6),
}
_CARD = {F.CardGeq: ">=", F.CardEq: "=", F.CardLeq: "<="}
_FUNC1 = {F.Star: "rtc", F.TransClosurePlus: "tc", F.Acyclic: "acyclic"}


def pretty_type(t: Type) -> str:
    if isinstance(t, BoolType):
        return "bool"
    if isinstance(t, ObjType):
        return "obj"
    k = _rel_k(t)
    if k is not None:
        return f"rel {k}"
    if isinstance(t, Arrow):
        a = pretty_type(t.arg)
        if isinstance(t.arg, Arrow) and _rel_k(t.arg) is None:
            a = f"({a})"
        return f"{a} -> {pretty_type(t.result)}"
    raise TypeError(f"not a type: {t!r}")


def _rel_k(t: Type):
    k = 0
    while isinstance(t, Arrow) and isinstance(t.arg, ObjType):
        k += 1
        t = t.result
    return k if k and isinstance(t, BoolType) else None


def _wrap(s: str, own: int, need: int) -> str:
    return f"({s})" if own < need else s


def pretty(f, prec: int = 0) -> str:
    """Concrete syntax for formulas, RL2, FO, statements, structures and DL terms."""
    from ..dl import Concept, Role
    from ..fo import FO
    from ..rl2 import RL2, embed
    from ..structure import Structure
    from ..verify import ModItem, Program, Statement

    if isinstance(f, RL2):
        return _formula(embed(f), prec)
    if isinstance(f, FO):
        return _fo(f, prec)
    if isinstance(f, Statement):
        return _stmt(f, prec)
    if isinstance(f, ModItem):
        return _mod_item(f)
    if isinstance(f, Program):
        return pretty_program(f)
    if isinstance(f, Structure):
        return pretty_structure(f)
    if isinstance(f, (Concept, Role)):
        return _dl(f)
    if isinstance(f, Type):
        return pretty_type(f)
    return _formula(f, prec)


def _formula(f, prec: int = 0) -> str:
    from .. import verify as V

    t = type(f)
    if t in _BIN:
        sym, own, lp, rp = _BIN[t]
        return _wrap(f"{_formula(f.left, lp)} {sym} {_formula(f.right, rp)}", own, prec)
    if t is F.Var:
        return f.name
    if t is F.Index:
        return f"#{f.k}"
    if t is F.Id:
        return "id"
    if t is F.Const:
        return "true" if f.value else "false"
    if t is F.Not:
        return _wrap("!" + _formula(f.arg, 6), 6, prec)
    if t is F.Tilde:
        return _wrap("~" + _formula(f.arg, 6), 6, prec)
    if t is F.App:
        return _wrap(f"{_formula(f.fn, 7)} {_formula(f.arg, 8)}", 7, prec)
    if t is F.Prime:
        return _formula(f.arg, 8) + "'"
    if t is F.CurlyBrace:
        return "{" + _formula(f.arg) + "}"
    if t is F.SquareBrace:
        return "[" + _formula(f.arg) + "]"
    if t in _CARD:
        return f"card({_CARD[t]}{f.k}, {_formula(f.arg)})"
    if t in (F.SumCardGeq, F.SumCardEq):
        op = ">=" if t is F.SumCardGeq else "="
        return f"sumcard({op}{f.k}, {_list(f.args)})"
    if t in _FUNC1:
        return f"{_FUNC1[t]}({_formula(f.arg)})"
    if t is F.Compose:
        return f"comp({_formula(f.left)}, {_formula(f.right)})"
    if t is F.Image:
        return f"image({_formula(f.set)}, {_formula(f.rel)})"
    if t is F.Wlp:
        return f"wlp({_formula(f.rel)}, {_formula(f.set)})"
    if t is F.Disjoint:
        return f"disjoint({_list(f.args)})"
    if t is F.Tree:
        return f"tree({_list(f.args)})"
    if t is F.Partition:
        return f"partition({_formula(f.whole)}; {_list(f.parts)})"
    if t is F.Exists:
        if isinstance(f.arg, F.NamedLambda):
            a = f.arg
            return _wrap(f"ex {a.name}:{pretty_type(a.type)}. {_formula(a.body)}", 0, prec)
        return f"exists({_formula(f.arg)})"
    if t is F.Forall:
        return _wrap(f"all {f.name}. {_formula(f.body)}", 0, prec)
    if t is F.DBLambda:
        return _wrap(f"lam. {_formula(f.body)}", 0, prec)
    if t is F.NamedLambda:
        return _wrap(f"lam {f.name}:{pretty_type(f.type)}. {_formula(f.body)}", 0, prec)
    if t is F.Let:
        s = f"let {f.name}:{pretty_type(f.type)} = {_formula(f.defn)} in {_formula(f.body)}"
        return _wrap(s, 0, prec)
    if t is V.Old:
        return f"old({_formula(f.arg)})"
    if t is V.SkipAtom:
        return "skip"
    if t is V.ModifyAtom:
        return "modify(" + ", ".join(_mod_item(i) for i in f.items) + ")"
    if t is V.StmtAtom:
        if isinstance(f.stmt, V.Call):
            return _stmt(f.stmt)
        return "(" + _stmt(f.stmt) + ")"
    raise TypeError(f"cannot print {f!r}")


def _list(xs) -> str:
    return ", ".join(_formula(x) for x in xs)


def _fo(f, prec: int = 0) -> str:
    from .. import fo

    t = type(f)
    if t is fo.FConst:
        return "true" if f.value else "false"
    if t is fo.FOr:
        return _wrap(f"{_fo(f.left, 3)} | {_fo(f.right, 4)}", 3, prec)
    if t is fo.FAnd:
        return _wrap(f"{_fo(f.left, 4)} & {_fo(f.right, 5)}", 4, prec)
    if t is fo.FNot:
        return _wrap("!" + _fo(f.arg, 6), 6, prec)
    if t is fo.AtomU:
        return f"{f.pred}({f.var})"
    if t is fo.AtomB:
        return f"{f.pred}({f.left}, {f.right})"
    if t is fo.Eq:
        return f"{f.left} = {f.right}"
    if t is fo.IAtomU:
        return f"{f.pred}(#{f.i})"
    if t is fo.IAtomB:
        return f"{f.pred}(#{f.i}, #{f.j})"
    if t is fo.IEq:
        return f"#{f.i} = #{f.j}"
    if t is fo.Card:
        return f"card(>={f.k}, {_fo(f.body)})"
    if t is fo.ExistsGeq:
        head = f"ex {f.var}" if f.k == 1 else f"exge {f.k} {f.var}"
        return _wrap(f"{head}. {_fo(f.body)}", 0, prec)
    raise TypeError(f"cannot print {f!r}")


def _stmt(s, prec: int = 0) -> str:
    from .. import verify as V

    t = type(s)
    if t is V.Seq:
        return _swrap(f"{_stmt(s.left, 1)}; {_stmt(s.right, 0)}", 0, prec)
    if t is V.Choice:
        return _swrap(f"{_stmt(s.left, 1)} [] {_stmt(s.right, 2)}", 1, prec)
    if t is V.Conj:
        return _swrap(f"{_stmt(s.left, 2)} && {_stmt(s.right, 3)}", 2, prec)
    if t is V.AssignU:
        return f"{s.name} := {_formula(s.value)}"
    if t in (V.AssignF, V.AssignFInv):
        tilde = "~" if t is V.AssignFInv else ""
        return f"{_formula(s.src, 1)}.{tilde}{s.field} := {_formula(s.value)}"
    if t is V.Call:
        return f"{s.name}({_list(s.args)})"
    if t is V.Assume:
        return f"assume {_formula(s.cond)}"
    if t is V.Assert:
        return f"assert {_formula(s.cond)}"
    if t is V.Spec:
        if isinstance(s.body, V.SkipAtom):
            return "skip"
        return f"spec {_formula(s.body)}"
    raise TypeError(f"cannot print {s!r}")


def _swrap(s: str, own: int, need: int) -> str:
    return f"begin {s} end" if own < need else s


def _mod_item(i) -> str:
    from .. import verify as V

    if isinstance(i, V.UnaryMod):
        return f"{i.name} <= {_formula(i.value)}"
    tilde = "~" if isinstance(i, V.FieldInvMod) else ""
    return f"{_formula(i.src, 1)}.{tilde}{i.field} <= {_formula(i.value)}"


def pretty_program(p) -> str:
    lines = []
    if p.vocab.unary:
        lines.append("unary " + ", ".join(p.vocab.unary))
    if p.vocab.binary:
        lines.append("binary " + ", ".join(p.vocab.binary))
    for proc in p.procedures.values():
        lines.append(f"proc {proc.name}({', '.join(proc.params)}) =\n    {_stmt(proc.body)}")
    for impl, spec in p.claims:
        lines.append(f"claim {impl} => {spec}")
    return "\n".join(lines) + "\n"


def pretty_structure(s) -> str:
    lines = [f"universe {s.size}"]
    for n, xs in s.unary.items():
        lines.append(f"unary {n} = {{{', '.join(map(str, sorted(xs)))}}}")
    for n, xs in s.binary.items():
        pairs = ", ".join(f"({a}, {b})" for a, b in sorted(xs))
        lines.append(f"binary {n} = {{{pairs}}}")
    return "\n".join(lines) + "\n"


def _dl(t) -> str:
    from .. import dl

    if isinstance(t, dl.Top):
        return "top"
    if isinstance(t, dl.Universal):
        return "U"
    if isinstance(t, (dl.AtomicC, dl.AtomicR)):
        return t.name
    if isinstance(t, (dl.CAnd, dl.RoleAnd)):
        return f"and({_dl(t.left)}, {_dl(t.right)})"
    if isinstance(t, (dl.CNot, dl.RoleNot)):
        return f"not({_dl(t.arg)})"
    if isinstance(t, dl.AtLeast):
        return f"atleast({t.n}, {_dl(t.role)}, {_dl(t.concept)})"
    if isinstance(t, dl.Inverse):
        return f"inv({_dl(t.arg)})"
    if isinstance(t, dl.Restrict):
        return f"restrict({_dl(t.role)}, {_dl(t.concept)})"
    if isinstance(t, dl.IdOf):
        return f"id({_dl(t.concept)})"
    if isinstance(t, dl.RoleCompose):
        return f"comp({_dl(t.left)}, {_dl(t.right)})"
    if isinstance(t, dl.RoleStar):
        return f"star({_dl(t.arg)})"
    raise TypeError(f"cannot print {t!r}")
