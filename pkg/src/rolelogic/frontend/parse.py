"""Recursive-descent parsers for formulas, structures, programs and DL terms."""

from __future__ import annotations

from ..errors import ParseError
from ..formula import (
    Acyclic, And, App, Arrow, Bool, CardEq, CardGeq, CardLeq, Compose, Const,
    CurlyBrace, DBLambda, Disjoint, Exists, Forall, Formula, Id, Iff, Image,
    Implies, Index, Let, NamedLambda, Not, Obj, Or, Partition, Prime, RelK,
    SetMinus, SquareBrace, Star, SumCardEq, SumCardGeq, Tilde, TransClosurePlus,
    Tree, Type, Var, Wlp,
)
from .lexer import Token, tokenize

BINDERS = frozenset({"lam", "ex", "all", "let"})
_FUNCS = frozenset({"card", "sumcard", "rtc", "tc", "comp", "disjoint", "partition",
                    "acyclic", "tree", "image", "wlp", "exists"})
_ATOM_KW = frozenset({"true", "false", "id"}) | _FUNCS


class Parser:
    def __init__(self, text: str, file: str = "<input>"):
        self.toks = tokenize(text, file)
        self.pos = 0
        self.macros: dict[str, Formula] = {}

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "keyword") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, expected, what: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(what or f"unexpected {found}", t.span, frozenset(expected))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail({text})
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail({"identifier"})
        return self.advance().text

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail({"integer"})
        return self.advance().value

    def end(self):
        if self.tok.kind != "eof":
            self.fail({"end of input"})

    # types

    def type_(self) -> Type:
        t = self.type_atom()
        if self.accept("->"):
            return Arrow(t, self.type_())
        return t

    def type_atom(self) -> Type:
        if self.accept("bool"):
            return Bool
        if self.accept("obj"):
            return Obj
        if self.accept("rel"):
            return RelK(self.integer())
        if self.accept("("):
            t = self.type_()
            self.expect(")")
            return t
        self.fail({"bool", "obj", "rel", "("})

    # formulas

    def formula(self) -> Formula:
        if self.tok.kind == "keyword" and self.tok.text in BINDERS:
            return self.binder()
        return self.iff()

    def binder(self) -> Formula:
        t = self.advance()
        sp = t.span
        if t.text == "lam":
            if self.accept("."):
                return DBLambda(self.formula(), span=sp)
            name = self.ident()
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            return NamedLambda(name, ty, self.formula(), span=sp)
        if t.text == "ex":
            name = self.ident()
            ty = self.type_() if self.accept(":") else Obj
            self.expect(".")
            return Exists(NamedLambda(name, ty, self.formula(), span=sp), span=sp)
        if t.text == "all":
            name = self.ident()
            if self.accept(":"):
                self.expect("obj")
            self.expect(".")
            return Forall(name, self.formula(), span=sp)
        name = self.ident()
        self.expect(":")
        ty = self.type_()
        self.expect("=")
        defn = self.formula()
        self.expect("in")
        return Let(name, ty, defn, self.formula(), span=sp)

    def iff(self) -> Formula:
        left = self.implies()
        while self.at("<=>"):
            sp = self.advance().span
            left = Iff(left, self.implies(), span=sp)
        return left

    def implies(self) -> Formula:
        left = self.or_()
        if self.at("=>"):
            sp = self.advance().span
            return Implies(left, self.implies(), span=sp)
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.at("|"):
            sp = self.advance().span
            left = Or(left, self.and_(), span=sp)
        return left

    def and_(self) -> Formula:
        left = self.setminus()
        while self.at("&"):
            sp = self.advance().span
            left = And(left, self.setminus(), span=sp)
        return left

    def setminus(self) -> Formula:
        left = self.unary()
        while self.at("\\"):
            sp = self.advance().span
            left = SetMinus(left, self.unary(), span=sp)
        return left

    def unary(self) -> Formula:
        if self.at("!"):
            sp = self.advance().span
            return Not(self.unary(), span=sp)
        if self.at("~"):
            sp = self.advance().span
            return Tilde(self.unary(), span=sp)
        return self.application()

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "index", "int"):
            return t.kind != "int"
        if t.kind == "sym":
            return t.text in ("(", "{", "[")
        return t.kind == "keyword" and t.text in (_ATOM_KW | BINDERS | self.extra_atoms())

    def extra_atoms(self) -> frozenset:
        return frozenset()

    def application(self) -> Formula:
        f = self.postfix()
        while self.starts_atom() and not self.stops_application():
            arg = self.postfix()
            f = App(f, arg, span=arg.span)
        return f

    def stops_application(self) -> bool:
        return False

    def postfix(self) -> Formula:
        f = self.atom()
        while self.at("'"):
            sp = self.advance().span
            f = Prime(f, span=sp)
        return f

    def atom(self) -> Formula:
        t = self.tok
        sp = t.span
        if t.kind == "index":
            self.advance()
            if t.value < 1:
                raise ParseError("stack indices start at #1", sp)
            return Index(t.value, span=sp)
        if t.kind == "ident":
            self.advance()
            if t.text in self.macros:
                return self.macros[t.text]
            return Var(t.text, span=sp)
        if t.kind == "keyword":
            if t.text in BINDERS:
                return self.binder()
            if t.text in ("true", "false"):
                self.advance()
                return Const(t.text == "true", span=sp)
            if t.text == "id":
                self.advance()
                return Id(span=sp)
            if t.text in _FUNCS:
                return self.function()
            return self.keyword_atom()
        if self.accept("("):
            f = self.paren_body()
            self.expect(")")
            return f
        if self.accept("{"):
            f = self.formula()
            self.expect("}")
            return CurlyBrace(f, span=sp)
        if self.accept("["):
            f = self.formula()
            self.expect("]")
            return SquareBrace(f, span=sp)
        self.fail({"identifier", "#k", "(", "{", "[", "true", "false", "id"})

    def paren_body(self) -> Formula:
        return self.formula()

    def keyword_atom(self) -> Formula:
        self.fail({"identifier", "#k", "(", "{", "[", "true", "false", "id"})

    def formula_list(self) -> tuple[Formula, ...]:
        out = [self.formula()]
        while self.accept(","):
            out.append(self.formula())
        return tuple(out)

    def cmp_op(self, allowed=(">=", "=", "<=")) -> str:
        for op in allowed:
            if self.accept(op):
                return op
        self.fail(set(allowed))

    def function(self) -> Formula:
        t = self.advance()
        sp = t.span
        name = t.text
        self.expect("(")
        if name == "card":
            op = self.cmp_op()
            k = self.integer()
            self.expect(",")
            arg = self.formula()
            out = {">=": CardGeq, "=": CardEq, "<=": CardLeq}[op](k, arg, span=sp)
        elif name == "sumcard":
            op = self.cmp_op((">=", "="))
            k = self.integer()
            self.expect(",")
            args = self.formula_list()
            out = (SumCardGeq if op == ">=" else SumCardEq)(k, args, span=sp)
        elif name in ("comp", "image", "wlp"):
            a = self.formula()
            self.expect(",")
            b = self.formula()
            out = {"comp": Compose, "image": Image, "wlp": Wlp}[name](a, b, span=sp)
        elif name in ("disjoint", "tree"):
            out = (Disjoint if name == "disjoint" else Tree)(self.formula_list(), span=sp)
        elif name == "partition":
            whole = self.formula()
            if not self.accept(";"):
                self.expect(",")
            out = Partition(whole, self.formula_list(), span=sp)
        else:
            cls = {"rtc": Star, "tc": TransClosurePlus, "acyclic": Acyclic, "exists": Exists}[name]
            out = cls(self.formula(), span=sp)
        self.expect(")")
        return out


class FOParser(Parser):
    """Two-variable syntax: ``A(x)``, ``f(x,y)``, ``x = y`` and quantifiers;
    with ``indexed`` set, ``#1``/``#2`` replace variables and ``card``
    is the only quantifier."""

    def __init__(self, text: str, file: str = "<input>", indexed: bool = False):
        super().__init__(text, file)
        self.indexed = indexed

    def fo(self):
        from ..fo import ExistsGeq, f_forall

        t = self.tok
        if not self.indexed and t.kind == "keyword" and t.text in ("ex", "all", "exge"):
            self.advance()
            k = self.integer() if t.text == "exge" else 1
            v = self.ident()
            self.expect(".")
            body = self.fo()
            if t.text == "all":
                return f_forall(v, body)
            return ExistsGeq(k, v, body, span=t.span)
        return self.fo_iff()

    def fo_iff(self):
        from ..fo import f_iff

        left = self.fo_implies()
        while self.accept("<=>"):
            left = f_iff(left, self.fo_implies())
        return left

    def fo_implies(self):
        from ..fo import f_implies

        left = self.fo_or()
        if self.accept("=>"):
            return f_implies(left, self.fo_implies())
        return left

    def fo_or(self):
        from ..fo import FOr

        left = self.fo_and()
        while self.accept("|"):
            left = FOr(left, self.fo_and())
        return left

    def fo_and(self):
        from ..fo import FAnd

        left = self.fo_unary()
        while self.accept("&"):
            left = FAnd(left, self.fo_unary())
        return left

    def fo_unary(self):
        from ..fo import FNot

        if self.accept("!"):
            return FNot(self.fo_unary())
        t = self.tok
        if t.kind == "keyword" and t.text in ("ex", "all", "exge"):
            return self.fo()
        return self.fo_atom()

    def term(self):
        if self.indexed:
            t = self.tok
            if t.kind != "index" or t.value not in (1, 2):
                self.fail({"#1", "#2"})
            return self.advance().value
        return self.ident()

    def fo_atom(self):
        from ..fo import (AtomB, AtomU, BOTTOM, Card, Eq, IAtomB, IAtomU, IEq, TOP)

        t = self.tok
        sp = t.span
        if self.accept("true"):
            return TOP
        if self.accept("false"):
            return BOTTOM
        if self.indexed and self.at("card"):
            self.advance()
            self.expect("(")
            self.expect(">=")
            k = self.integer()
            self.expect(",")
            body = self.fo()
            self.expect(")")
            return Card(k, body, span=sp)
        if self.accept("("):
            f = self.fo()
            self.expect(")")
            return f
        if t.kind == "ident" and self.peek().kind == "sym" and self.peek().text == "(":
            name = self.advance().text
            self.expect("(")
            a = self.term()
            if self.accept(","):
                b = self.term()
                self.expect(")")
                return (IAtomB(name, a, b, span=sp) if self.indexed
                        else AtomB(name, a, b, span=sp))
            self.expect(")")
            return IAtomU(name, a, span=sp) if self.indexed else AtomU(name, a, span=sp)
        if t.kind in ("ident", "index"):
            a = self.term()
            self.expect("=")
            b = self.term()
            return IEq(a, b, span=sp) if self.indexed else Eq(a, b, span=sp)
        self.fail({"predicate", "variable", "(", "true", "false", "!"})


class StructureParser(Parser):
    """``universe n``, ``unary A = {1, 2}``, ``binary f = {(1, 2)}``."""

    def element(self, n: int, name: str) -> int:
        from ..errors import OutOfUniverse

        sp = self.tok.span
        e = self.integer()
        if not 1 <= e <= n:
            raise OutOfUniverse(f"{name}: element {e} outside universe of size {n}").at(sp)
        return e

    def structure(self):
        from ..errors import DuplicateDecl
        from ..structure import Structure

        self.expect("universe")
        n = self.integer()
        unary: dict[str, set] = {}
        binary: dict[str, set] = {}
        while self.tok.kind != "eof":
            kind = self.advance()
            if kind.text not in ("unary", "binary"):
                self.pos -= 1
                self.fail({"unary", "binary", "end of input"})
            name = self.ident()
            if name in unary or name in binary:
                raise DuplicateDecl(f"{name} declared twice").at(kind.span)
            self.expect("=")
            self.expect("{")
            elems = set()
            while not self.at("}"):
                if kind.text == "unary":
                    e = self.element(n, name)
                    if e in elems:
                        raise DuplicateDecl(f"element {e} listed twice in {name}").at(self.toks[self.pos - 1].span)
                    elems.add(e)
                else:
                    self.expect("(")
                    a = self.element(n, name)
                    self.expect(",")
                    b = self.element(n, name)
                    self.expect(")")
                    if (a, b) in elems:
                        raise DuplicateDecl(f"tuple ({a}, {b}) listed twice in {name}").at(self.toks[self.pos - 1].span)
                    elems.add((a, b))
                if not self.accept(","):
                    break
            self.expect("}")
            (unary if kind.text == "unary" else binary)[name] = elems
        return Structure(n, unary, binary)


class ProgramParser(Parser):
    """Declarations, macros, procedures and claims."""

    def __init__(self, text: str, file: str = "<input>"):
        super().__init__(text, file)
        self.unary_names: list[str] = []
        self.binary_names: list[str] = []
        self.params: tuple[str, ...] = ()
        self.spec_mode = False

    def is_pred(self, name: str) -> bool:
        return (name in self.unary_names or name in self.binary_names or name in self.params
                or name in self.macros or name == "error" or "@" in name)

    def is_call(self) -> bool:
        t = self.tok
        nxt = self.peek()
        return (t.kind == "ident" and not self.is_pred(t.text)
                and nxt.kind == "sym" and nxt.text == "(")

    # specification formulas

    def extra_atoms(self) -> frozenset:
        return frozenset({"old", "modify", "skip"}) if self.spec_mode else frozenset()

    def stops_application(self) -> bool:
        return self.spec_mode and self.is_call()

    def atom(self) -> Formula:
        from ..verify import StmtAtom

        if self.spec_mode and self.is_call():
            return StmtAtom(self.call())
        return super().atom()

    def keyword_atom(self) -> Formula:
        from ..verify import ModifyAtom, Old, SkipAtom

        t = self.tok
        if self.spec_mode and t.text == "skip":
            self.advance()
            return SkipAtom(span=t.span)
        if self.spec_mode and t.text == "old":
            self.advance()
            self.expect("(")
            f = self.formula()
            self.expect(")")
            return Old(f, span=t.span)
        if self.spec_mode and t.text == "modify":
            self.advance()
            self.expect("(")
            items = []
            if not self.at(")"):
                items.append(self.mod_item())
                while self.accept(","):
                    items.append(self.mod_item())
            self.expect(")")
            return ModifyAtom(tuple(items), span=t.span)
        return super().keyword_atom()

    def paren_body(self) -> Formula:
        from ..verify import StmtAtom

        if self.spec_mode and (self.at("assume") or self.at("assert") or self.at("begin")):
            s = self.with_mode(False, self.statement)
            return StmtAtom(s, span=s.span)
        if self.spec_mode:
            save = self.pos
            try:
                s = self.assignment()
                if self.at(")"):
                    return StmtAtom(s, span=s.span)
            except ParseError:
                pass
            self.pos = save
        return self.formula()

    def mod_item(self):
        from ..verify import FieldInvMod, FieldMod, UnaryMod

        sp = self.tok.span
        if self.tok.kind == "ident" and self.peek().kind == "sym" and self.peek().text == "<=":
            name = self.ident()
            self.expect("<=")
            return UnaryMod(name, self.formula(), span=sp)
        src = self.with_mode(False, self.formula)
        self.expect(".")
        inv = self.accept("~")
        fld = self.ident()
        self.expect("<=")
        val = self.formula()
        return (FieldInvMod if inv else FieldMod)(src, fld, val, span=sp)

    def with_mode(self, mode: bool, fn):
        old = self.spec_mode
        self.spec_mode = mode
        try:
            return fn()
        finally:
            self.spec_mode = old

    # statements

    def statement(self):
        from ..verify import Seq

        left = self.choice()
        if self.accept(";"):
            return Seq(left, self.statement(), span=left.span)
        return left

    def choice(self):
        from ..verify import Choice

        left = self.conj()
        while self.accept("[]"):
            left = Choice(left, self.conj(), span=left.span)
        return left

    def conj(self):
        from ..verify import Conj

        left = self.basic()
        while self.accept("&&"):
            left = Conj(left, self.basic(), span=left.span)
        return left

    def basic(self):
        from ..verify import Assert, Assume, SkipAtom, Spec

        t = self.tok
        sp = t.span
        if self.accept("begin"):
            s = self.statement()
            self.expect("end")
            return s
        if self.accept("skip"):
            return Spec(SkipAtom(span=sp), span=sp)
        if self.accept("assume"):
            return Assume(self.with_mode(False, self.formula), span=sp)
        if self.accept("assert"):
            return Assert(self.with_mode(False, self.formula), span=sp)
        if self.accept("spec"):
            return Spec(self.with_mode(True, self.formula), span=sp)
        if self.is_call():
            return self.call()
        return self.assignment()

    def call(self):
        from ..verify import Call

        sp = self.tok.span
        name = self.ident()
        self.expect("(")
        args: tuple = ()
        if not self.at(")"):
            args = self.with_mode(False, self.formula_list)
        self.expect(")")
        return Call(name, args, span=sp)

    def assignment(self):
        from ..verify import AssignF, AssignFInv, AssignU

        sp = self.tok.span
        if self.tok.kind == "ident" and self.peek().kind == "sym" and self.peek().text == ":=":
            name = self.ident()
            self.expect(":=")
            return AssignU(name, self.with_mode(False, self.formula), span=sp)
        src = self.with_mode(False, self.formula)
        if not self.at("."):
            self.fail({":=", "."}, "expected an assignment")
        self.advance()
        inv = self.accept("~")
        fld = self.ident()
        self.expect(":=")
        val = self.with_mode(False, self.formula)
        return (AssignFInv if inv else AssignF)(src, fld, val, span=sp)

    # declarations

    def names(self) -> list[str]:
        out = [self.ident()]
        while self.accept(","):
            out.append(self.ident())
        return out

    def program(self):
        from ..errors import DuplicateDecl, DuplicateProc, RoleLogicError
        from ..verify import Procedure, Program, Vocabulary

        procs: dict[str, Procedure] = {}
        proc_spans: dict[str, object] = {}
        claims: list[tuple[str, str]] = []
        claim_spans: list = []

        def declare(name, sp):
            if name in procs:
                raise DuplicateProc(f"procedure {name} defined twice").at(sp)
            if self.is_pred(name):
                raise DuplicateDecl(f"{name} declared twice").at(sp)

        while self.tok.kind != "eof":
            t = self.tok
            if self.accept("unary") or self.accept("binary"):
                for n in self.names():
                    declare(n, t.span)
                    (self.unary_names if t.text == "unary" else self.binary_names).append(n)
            elif self.accept("define"):
                name = self.ident()
                declare(name, t.span)
                self.expect("=")
                self.macros[name] = self.formula()
            elif self.accept("proc"):
                name = self.ident()
                declare(name, t.span)
                self.expect("(")
                params = [] if self.at(")") else self.names()
                self.expect(")")
                self.expect("=")
                self.params = tuple(params)
                body = self.statement()
                self.params = ()
                procs[name] = Procedure(name, tuple(params), body)
                proc_spans[name] = t.span
            elif self.accept("claim"):
                self.accept(":")
                impl = self.ident()
                self.expect("=>")
                claims.append((impl, self.ident()))
                claim_spans.append(t.span)
            else:
                self.fail({"unary", "binary", "define", "proc", "claim"})
        vocab = Vocabulary(tuple(self.unary_names), tuple(self.binary_names))
        for name, p in procs.items():
            try:
                Program(vocab, {name: p}).validate()
            except RoleLogicError as e:
                raise e.at(proc_spans[name])
        for c, sp in zip(claims, claim_spans):
            try:
                Program(vocab, procs, [c]).validate()
            except RoleLogicError as e:
                raise e.at(sp)
        return Program(vocab, procs, claims)


class DLParser(Parser):
    """Functional DL syntax such as ``atleast(2, inv(r), and(A, not(B)))``."""

    def word(self) -> str:
        t = self.tok
        if t.kind not in ("ident", "keyword"):
            self.fail({"concept", "role"})
        return t.text

    def call_args(self, *kinds):
        self.expect("(")
        out = []
        for i, k in enumerate(kinds):
            if i:
                self.expect(",")
            out.append({"c": self.concept, "r": self.role, "n": self.integer}[k]())
        self.expect(")")
        return out

    def concept(self):
        from .. import dl

        sp = self.tok.span
        w = self.word()
        nxt = self.peek()
        if not (nxt.kind == "sym" and nxt.text == "("):
            self.advance()
            if w == "top":
                return dl.Top(span=sp)
            if self.toks[self.pos - 1].kind != "ident":
                self.pos -= 1
                self.fail({"concept"})
            return dl.AtomicC(w, span=sp)
        self.advance()
        if w == "and":
            a, b = self.call_args("c", "c")
            return dl.CAnd(a, b, span=sp)
        if w == "or":
            return dl.c_or(*self.call_args("c", "c"))
        if w == "not":
            return dl.CNot(*self.call_args("c"), span=sp)
        if w == "atleast":
            n, r, c = self.call_args("n", "r", "c")
            return dl.AtLeast(n, r, c, span=sp)
        if w == "atmost":
            return dl.c_atmost(*self.call_args("n", "r", "c"))
        if w == "some":
            return dl.c_some(*self.call_args("r", "c"))
        if w == "all":
            return dl.c_all(*self.call_args("r", "c"))
        self.pos -= 1
        self.fail({"and", "or", "not", "atleast", "atmost", "some", "all"},
                  f"unknown concept constructor {w!r}")

    def role(self):
        from .. import dl

        sp = self.tok.span
        w = self.word()
        nxt = self.peek()
        if not (nxt.kind == "sym" and nxt.text == "("):
            self.advance()
            if w == "U":
                return dl.Universal(span=sp)
            if self.toks[self.pos - 1].kind != "ident":
                self.pos -= 1
                self.fail({"role"})
            return dl.AtomicR(w, span=sp)
        self.advance()
        if w == "and":
            a, b = self.call_args("r", "r")
            return dl.RoleAnd(a, b, span=sp)
        if w == "or":
            return dl.r_or(*self.call_args("r", "r"))
        if w == "not":
            return dl.RoleNot(*self.call_args("r"), span=sp)
        if w == "inv":
            return dl.Inverse(*self.call_args("r"), span=sp)
        if w == "restrict":
            r, c = self.call_args("r", "c")
            return dl.Restrict(r, c, span=sp)
        if w == "id":
            return dl.IdOf(*self.call_args("c"), span=sp)
        if w == "comp":
            a, b = self.call_args("r", "r")
            return dl.RoleCompose(a, b, span=sp)
        if w == "star":
            return dl.RoleStar(*self.call_args("r"), span=sp)
        self.pos -= 1
        self.fail({"and", "or", "not", "inv", "restrict", "id", "comp", "star"},
                  f"unknown role constructor {w!r}")

    def query(self):
        """A concept, or ``C [= D`` for a subsumption question."""
        c = self.concept()
        if self.accept("["):
            self.expect("=")
            return c, self.concept()
        return c, None


# ---------------------------------------------------------------- entry points


def _run(parser: Parser, method: str):
    out = getattr(parser, method)()
    parser.end()
    return out


def parse_formula(text: str, file: str = "<input>") -> Formula:
    return _run(Parser(text, file), "formula")


def parse_rl2(text: str, file: str = "<input>", ctx=None):
    from ..rl2 import coerce_rl2

    return coerce_rl2(parse_formula(text, file), ctx)


def parse_fo(text: str, file: str = "<input>"):
    return _run(FOParser(text, file), "fo")


def parse_i2(text: str, file: str = "<input>"):
    return _run(FOParser(text, file, indexed=True), "fo")


def parse_type(text: str, file: str = "<input>") -> Type:
    return _run(Parser(text, file), "type_")


def parse_structure(text: str, file: str = "<input>"):
    return _run(StructureParser(text, file), "structure")


def parse_program(text: str, file: str = "<input>"):
    return _run(ProgramParser(text, file), "program")


def parse_statement(text: str, unary=(), binary=(), file: str = "<input>"):
    p = ProgramParser(text, file)
    p.unary_names = list(unary)
    p.binary_names = list(binary)
    return _run(p, "statement")


def parse_concept(text: str, file: str = "<input>"):
    return _run(DLParser(text, file), "concept")


def parse_role(text: str, file: str = "<input>"):
    return _run(DLParser(text, file), "role")


def parse_dl_query(text: str, file: str = "<input>"):
    return _run(DLParser(text, file), "query")
