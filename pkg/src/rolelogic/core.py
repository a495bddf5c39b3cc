"""Typing, default arguments, desugaring, normalization and evaluation."""

from __future__ import annotations

import itertools
from typing import Any

from .errors import ArityMismatch, RoleLogicError, TypeMismatch, UnboundName
from .formula import (
    Acyclic, And, App, Arrow, Bool, CardEq, CardGeq, CardLeq, Compose, Const,
    CurlyBrace, DBLambda, Disjoint, Exists, Forall, Formula, Id, Iff, Image,
    Implies, Index, Let, NamedLambda, Not, Obj, Or, Partition, Prime, SetMinus,
    SquareBrace, Star, SumCardEq, SumCardGeq, Tilde, TransClosurePlus, Tree,
    Type, TypeContext, Var, Wlp, RelK, rel_arity, TRUE, FALSE, conj, disj, walk,
)
from .structure import Env, Structure


# ---------------------------------------------------------------- typing


def _is_relsym(f: Formula, ctx: TypeContext) -> bool:
    if isinstance(f, Id):
        return True
    if isinstance(f, Var):
        k = rel_arity(ctx.lookup(f.name))
        return k is not None and k >= 1
    if isinstance(f, Let):
        return _is_relsym(f.body, ctx.extend(f.name, f.type))
    return False


def typecheck(f: Formula, ctx: TypeContext | None = None) -> Type:
    """Simple type of ``f``.  A bare relation symbol in a boolean position
    is accepted because the default argument rule applies there."""
    return _tc(f, TypeContext(ctx or {}), ())


def _bool(f, ctx, path):
    if _is_relsym(f, ctx):
        return
    t = _tc(f, ctx, path)
    if t != Bool:
        raise TypeMismatch(f"expected bool, found {t}", path)


def _body_type(body, ctx, path):
    if _is_relsym(body, ctx):
        return Bool
    return _tc(body, ctx, path)


def _tc(f: Formula, ctx: TypeContext, path: tuple) -> Type:
    if isinstance(f, Var):
        return ctx.lookup(f.name)
    if isinstance(f, Index):
        return Obj
    if isinstance(f, Id):
        return RelK(2)
    if isinstance(f, Const):
        return Bool
    if isinstance(f, NamedLambda):
        return Arrow(f.type, _body_type(f.body, ctx.extend(f.name, f.type), path + (0,)))
    if isinstance(f, DBLambda):
        return Arrow(Obj, _body_type(f.body, ctx, path + (0,)))
    if isinstance(f, App):
        tf = _tc(f.fn, ctx, path + (0,))
        if not isinstance(tf, Arrow):
            raise TypeMismatch(f"cannot apply a value of type {tf}", path + (0,))
        ta = _tc(f.arg, ctx, path + (1,))
        if ta != tf.arg:
            raise TypeMismatch(f"argument has type {ta}, expected {tf.arg}", path + (1,))
        return tf.result
    if isinstance(f, Exists):
        t = _tc(f.arg, ctx, path + (0,))
        if t != RelK(1):
            raise TypeMismatch(f"the quantifier takes obj -> bool, found {t}", path + (0,))
        return Bool
    if isinstance(f, Let):
        k = rel_arity(f.type)
        if k is not None:
            _bool(f.defn, ctx, path + (0,))
        else:
            t = _tc(f.defn, ctx, path + (0,))
            if t != f.type:
                raise TypeMismatch(f"definition has type {t}, declared {f.type}", path + (0,))
        return _tc(f.body, ctx.extend(f.name, f.type), path + (1,))
    if isinstance(f, Forall):
        _bool(f.body, ctx.extend(f.name, Obj), path + (0,))
        return Bool
    # every remaining constructor is a connective over boolean arguments
    for i, c in enumerate(f.children()):
        _bool(c, ctx, path + (i,))
    return Bool


# ---------------------------------------------------------------- default arguments


def _apply_indices(head: Formula, k: int) -> Formula:
    out = head
    for i in range(k, 0, -1):
        out = App(out, Index(i), span=head.span)
    return out


def expand_default_args(f: Formula, ctx: TypeContext | None = None) -> Formula:
    """Replace every bare ``r`` with ``ctx(r) = rel k`` by ``r #k ... #1``."""
    return _eda(f, TypeContext(ctx or {}), True)


def _eda(f: Formula, ctx: TypeContext, boolpos: bool) -> Formula:
    if isinstance(f, Var):
        k = rel_arity(ctx.lookup(f.name))
        if boolpos and k:
            return _apply_indices(f, k)
        return f
    if isinstance(f, Id):
        return _apply_indices(f, 2) if boolpos else f
    if isinstance(f, App):
        fn = _eda(f.fn, ctx, False)
        arg = _eda(f.arg, ctx, False)
        if fn is f.fn and arg is f.arg:
            return f
        return App(fn, arg, span=f.span)
    if isinstance(f, Exists):
        return f.map_children(lambda c: _eda(c, ctx, False))
    if isinstance(f, NamedLambda):
        inner = ctx.extend(f.name, f.type)
        return f.map_children(lambda c: _eda(c, inner, True))
    if isinstance(f, Let):
        defn = _eda(f.defn, ctx, rel_arity(f.type) is not None)
        body = _eda(f.body, ctx.extend(f.name, f.type), True)
        return Let(f.name, f.type, defn, body, span=f.span)
    if isinstance(f, Forall):
        inner = ctx.extend(f.name, Obj)
        return f.map_children(lambda c: _eda(c, inner, True))
    return f.map_children(lambda c: _eda(c, ctx, True))


# ---------------------------------------------------------------- de Bruijn machinery


def db_binders(f: Formula) -> int:
    """Number of de Bruijn positions each child of a core node is under."""
    if isinstance(f, (DBLambda, CardGeq)):
        return 1
    if isinstance(f, (Prime, Tilde, Star)):
        return 2
    return 0


def _core_only(f: Formula):
    if type(f) not in _CORE_SET:
        raise RoleLogicError(f"{type(f).__name__} must be desugared first")


def shift(f: Formula, d: int, cutoff: int = 0) -> Formula:
    """Add ``d`` to every index greater than ``cutoff``."""
    if d == 0:
        return f
    _core_only(f)
    if isinstance(f, Index):
        if f.k > cutoff:
            if f.k + d < 1:
                raise RoleLogicError("shift produced a non-positive index")
            return Index(f.k + d, span=f.span)
        return f
    if _reads_slots(f, cutoff + 1):
        return shift(explicit_slots(f), d, cutoff)
    b = db_binders(f)
    return f.map_children(lambda c: shift(c, d, cutoff + b))


def _reads_slots(f: Formula, j: int) -> bool:
    """Does ``f`` implicitly read a context index ``>= j``?"""
    if isinstance(f, Prime):
        return j <= 2
    if isinstance(f, (Tilde, Star)):
        return j <= 2
    return False


def explicit_slots(f: Formula) -> Formula:
    """Equivalent of a prime, tilde or star node that reads the two context
    slots through explicit indices, so that renumbering cannot disturb it."""
    def same(a, b):
        return App(App(Id(), Index(a)), Index(b))

    body = shift(f.arg, 2, 4)
    if isinstance(f, Prime):
        inner = And(And(same(1, 4), same(2, 4)), body)
    elif isinstance(f, Tilde):
        inner = And(And(same(1, 4), same(2, 3)), body)
    else:
        inner = And(And(same(1, 3), same(2, 4)), Star(body))
    return Exists(DBLambda(Exists(DBLambda(inner))))


def subst_index(f: Formula, j: int, s: Formula) -> Formula:
    """Replace ``#j`` by ``s`` (no renumbering of other indices)."""
    _core_only(f)
    if isinstance(f, Index):
        return s if f.k == j else f
    if _reads_slots(f, j) and (j == 2 or not isinstance(f, Prime)):
        return subst_index(explicit_slots(f), j, s)
    b = db_binders(f)
    if b:
        s2 = shift(s, b, 0)
        return f.map_children(lambda c: subst_index(c, j + b, s2))
    return f.map_children(lambda c: subst_index(c, j, s))


def free_names(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, NamedLambda):
        return free_names(f.body) - {f.name}
    if isinstance(f, Forall):
        return free_names(f.body) - {f.name}
    if isinstance(f, Let):
        return free_names(f.defn) | (free_names(f.body) - {f.name})
    out: set[str] = set()
    for c in f.children():
        out |= free_names(c)
    return out


def max_free_index(f: Formula, depth: int = 0) -> int:
    """Largest ``k`` such that ``#k`` is free in ``f`` (0 if none)."""
    if isinstance(f, Index):
        return f.k - depth if f.k > depth else 0
    b = db_binders(f)
    return max((max_free_index(c, depth + b) for c in f.children()), default=0)


def fresh_name(base: str, avoid) -> str:
    for i in itertools.count(1):
        n = f"{base}_{i}"
        if n not in avoid:
            return n


def subst_name(f: Formula, name: str, s: Formula, depth: int = 0) -> Formula:
    """Capture-avoiding ``f[name := s]``; ``s`` is shifted under de Bruijn binders."""
    _core_only(f)
    if isinstance(f, Var):
        return shift(s, depth, 0) if f.name == name else f
    if isinstance(f, NamedLambda):
        if f.name == name:
            return f
        fv = free_names(s)
        if f.name in fv and name in free_names(f.body):
            new = fresh_name(f.name, fv | free_names(f.body))
            body = subst_name(f.body, f.name, Var(new), 0)
            f = NamedLambda(new, f.type, body, span=f.span)
        return NamedLambda(f.name, f.type, subst_name(f.body, name, s, depth), span=f.span)
    b = db_binders(f)
    return f.map_children(lambda c: subst_name(c, name, s, depth + b))


def beta_db(body: Formula, arg: Formula) -> Formula:
    return shift(subst_index(body, 1, shift(arg, 1, 0)), -1, 0)


# ---------------------------------------------------------------- desugaring


def _card_sum_geq(k: int, fs) -> Formula:
    terms = []
    for ks in _compositions(k, len(fs)):
        terms.append(conj(CardGeq(ki, fi) for ki, fi in zip(ks, fs) if ki > 0))
    return disj(terms)


def _card_sum_eq(k: int, fs) -> Formula:
    terms = []
    for ks in _compositions(k, len(fs)):
        terms.append(conj(And(CardGeq(ki, fi), Not(CardGeq(ki + 1, fi))) if ki else Not(CardGeq(1, fi))
                          for ki, fi in zip(ks, fs)))
    return disj(terms)


def _compositions(k: int, n: int):
    if n == 0:
        if k == 0:
            yield ()
        return
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


def _or(a, b):
    return Not(And(Not(a), Not(b)))


def _implies(a, b):
    return Not(And(a, Not(b)))


def _iff(a, b):
    return And(_implies(a, b), _implies(b, a))


def _brace(a):
    return Exists(DBLambda(a))


def _square(a):
    return Not(Exists(DBLambda(Not(a))))


def _disjoint(fs):
    pairs = [Not(And(fs[i], fs[j])) for i in range(len(fs)) for j in range(i + 1, len(fs))]
    if not pairs:
        return TRUE
    return _square(_conj_core(pairs))


def _conj_core(items):
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for x in items[1:]:
        out = And(out, x)
    return out


def _disj_core(items):
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for x in items[1:]:
        out = _or(out, x)
    return out


def _id21():
    return App(App(Id(), Index(2)), Index(1))


def _compose(f1, f2):
    # {x -> y} then {y -> z}: inside the brace #1 = y, #2 = z, #3 = x
    l1 = DBLambda(DBLambda(shift(f1, 1, 2)))
    l2 = DBLambda(DBLambda(shift(f2, 1, 2)))
    return _brace(And(App(App(l1, Index(3)), Index(1)), App(App(l2, Index(1)), Index(2))))


def _expand_card(k: int, f: Formula) -> Formula:
    if k == 0:
        return TRUE
    lam = DBLambda(shift(f, k, 1))
    parts = [App(lam, Index(i)) for i in range(1, k + 1)]
    parts += [Not(App(App(Id(), Index(i)), Index(j)))
              for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    out = _conj_core(parts)
    for _ in range(k):
        out = _brace(out)
    return out


def desugar(f: Formula, expand_counting: bool = False, ctx: TypeContext | None = None) -> Formula:
    """Erase all shorthands.

    With ``expand_counting`` the counting quantifier is also replaced by its
    explicit-index definition; that form is only meaningful once default
    arguments are explicit, so ``ctx`` is then required.
    """
    if expand_counting:
        if ctx is None:
            raise RoleLogicError("expanding counting quantifiers needs a type context")
        f = expand_default_args(f, ctx)
    return _ds(f, expand_counting)


def _ds(f: Formula, ec: bool) -> Formula:
    sp = f.span
    g = f.map_children(lambda c: _ds(c, ec))
    out = _ds_node(g, ec)
    if out is not g and sp is not None and out.span is None:
        object.__setattr__(out, "span", sp)
    return out


def _ds_node(f: Formula, ec: bool) -> Formula:
    if isinstance(f, CardGeq):
        return _expand_card(f.k, f.arg) if ec else f
    if isinstance(f, Or):
        return _or(f.left, f.right)
    if isinstance(f, Implies):
        return _implies(f.left, f.right)
    if isinstance(f, Iff):
        return _iff(f.left, f.right)
    if isinstance(f, CurlyBrace):
        return _brace(f.arg)
    if isinstance(f, SquareBrace):
        return _square(f.arg)
    if isinstance(f, Forall):
        return Not(Exists(NamedLambda(f.name, Obj, Not(f.body))))
    card = (lambda k, a: _expand_card(k, a)) if ec else CardGeq
    if isinstance(f, CardEq):
        return And(card(f.k, f.arg), Not(card(f.k + 1, f.arg)))
    if isinstance(f, CardLeq):
        return Not(card(f.k + 1, f.arg))
    if isinstance(f, SumCardGeq):
        if not f.args:
            raise ArityMismatch("a cardinality sum needs at least one summand")
        return _ds(_card_sum_geq(f.k, list(f.args)), ec)
    if isinstance(f, SumCardEq):
        if not f.args:
            raise ArityMismatch("a cardinality sum needs at least one summand")
        return _ds(_card_sum_eq(f.k, list(f.args)), ec)
    if isinstance(f, Disjoint):
        if not f.args:
            raise ArityMismatch("disjoint needs at least one argument")
        return _disjoint(list(f.args))
    if isinstance(f, Partition):
        if not f.parts:
            raise ArityMismatch("partition needs at least one part")
        return And(_disjoint(list(f.parts)), _square(_iff(f.whole, _disj_core(f.parts))))
    if isinstance(f, SetMinus):
        return And(f.left, Not(f.right))
    if isinstance(f, Compose):
        return _compose(f.left, f.right)
    if isinstance(f, TransClosurePlus):
        return _compose(f.arg, Star(f.arg))
    if isinstance(f, Acyclic):
        return Not(_brace(And(_compose(f.arg, Star(f.arg)), _id21())))
    if isinstance(f, Tree):
        if not f.args:
            raise ArityMismatch("tree needs at least one relation")
        u = _disj_core(f.args)
        acyc = Not(_brace(And(_compose(u, Star(u)), _id21())))
        indeg = Not(_ds(_card_sum_geq(2, [Tilde(a) for a in f.args]), ec))
        return And(acyc, _square(_implies(Star(u), indeg)))
    if isinstance(f, Image):
        return _brace(And(f.set, Tilde(f.rel)))
    if isinstance(f, Wlp):
        return _square(_implies(f.rel, f.set))
    if isinstance(f, Let):
        k = rel_arity(f.type)
        defn = f.defn
        for _ in range(k or 0):
            defn = DBLambda(defn)
        return App(NamedLambda(f.name, f.type, f.body), defn)
    return f


# ---------------------------------------------------------------- normalization


def convention_context(f: Formula) -> TypeContext:
    """Arity by spelling: capitalized names are sets, others binary relations."""
    ctx = TypeContext()
    for n in sorted(free_names(f)):
        ctx[n] = RelK(1) if n[:1].isupper() else RelK(2)
    return ctx


def normalize(f: Formula, ctx: TypeContext | None = None) -> Formula:
    """Desugar, make default arguments explicit and beta-normalize.

    Afterwards every lambda is the immediate argument of the quantifier.
    """
    if ctx is None:
        ctx = convention_context(f)
    g = expand_default_args(f, ctx)
    g = desugar(g)
    g = _nf(g)
    bad = lambda_violation(g)
    if bad is not None:
        raise RoleLogicError(f"lambda left outside a quantifier: {bad!r}")
    return g


def lambda_violation(f: Formula, parent_ok: bool = False):
    """First lambda that is not directly under ``Exists`` (``None`` if none)."""
    if isinstance(f, (DBLambda, NamedLambda)) and not parent_ok:
        return f
    for c in f.children():
        r = lambda_violation(c, isinstance(f, Exists))
        if r is not None:
            return r
    return None


def _nf(f: Formula) -> Formula:
    if isinstance(f, App):
        fn = _nf(f.fn)
        if isinstance(fn, DBLambda):
            return _nf(beta_db(fn.body, f.arg))
        if isinstance(fn, NamedLambda):
            return _nf(subst_name(fn.body, fn.name, f.arg))
        return App(fn, _nf(f.arg), span=f.span)
    return f.map_children(_nf)


# ---------------------------------------------------------------- evaluation


def structure_context(s: Structure, e: Env | None = None) -> TypeContext:
    ctx = TypeContext()
    for n in s.unary:
        ctx[n] = RelK(1)
    for n in s.binary:
        ctx[n] = RelK(2)
    if e is not None:
        for n, v in e.named.items():
            if isinstance(v, int) and not isinstance(v, bool):
                ctx[n] = Obj
            elif isinstance(v, bool):
                ctx[n] = Bool
    return ctx


def eval_formula(f: Formula, s: Structure, e: Env | None = None) -> Any:
    """Value of ``f`` in ``s``: a truth value for formulas, an element for
    object terms and a curried function for relation-valued terms."""
    e = e or Env()
    g = expand_default_args(f, structure_context(s, e))
    return _Evaluator(s).ev(g, e)


class _Evaluator:
    def __init__(self, s: Structure):
        self.s = s
        self.U = tuple(s.universe)

    def count(self, f, e, stop=None):
        n = 0
        for o in self.U:
            if self.ev(f, e.push(o)):
                n += 1
                if stop is not None and n >= stop:
                    break
        return n

    def rel(self, f, e):
        """Relation ``{(a, b) | f at (b, a) + stack}``."""
        return {(a, b) for a in self.U for b in self.U if self.ev(f, e.with_stack((b, a) + e.stack))}

    def rtc_holds(self, f, e):
        if len(e.stack) < 2:
            e.nth(2)
        x, y = e.stack[1], e.stack[0]
        return (x, y) in rtc(self.rel(f, e), self.U)

    def compose(self, f1, f2, e):
        z, x = e.nth(1), e.nth(2)
        for y in self.U:
            if self.ev(f1, e.with_stack((y, x) + e.stack)) and \
                    self.ev(f2, e.with_stack((z, y) + e.stack)):
                return True
        return False

    def tc(self, f, e):
        z, x = e.nth(1), e.nth(2)
        for y in self.U:
            if not self.ev(f, e.with_stack((y, x) + e.stack)):
                continue
            inner = e.with_stack((z, y) + e.stack)
            if self.rtc_holds(f, inner):
                return True
        return False

    def ev(self, f: Formula, e: Env) -> Any:
        t = type(f)
        if t is App:
            head = f.fn
            if isinstance(head, App) and isinstance(head.fn, Var) and head.fn.name not in e.named \
                    and head.fn.name in self.s.binary:
                return (self.ev(head.arg, e), self.ev(f.arg, e)) in self.s.binary[head.fn.name]
            if isinstance(head, Var) and head.name not in e.named and head.name in self.s.unary:
                return self.ev(f.arg, e) in self.s.unary[head.name]
            if isinstance(head, App) and isinstance(head.fn, Id):
                return self.ev(head.arg, e) == self.ev(f.arg, e)
            if isinstance(head, DBLambda):
                return self.ev(head.body, e.push(self.ev(f.arg, e)))
            return self.ev(head, e)(self.ev(f.arg, e))
        if t is And:
            return bool(self.ev(f.left, e)) and bool(self.ev(f.right, e))
        if t is Not:
            return not self.ev(f.arg, e)
        if t is Index:
            return e.nth(f.k)
        if t is Const:
            return f.value
        if t is Var:
            if f.name in e.named:
                return e.named[f.name]
            if f.name in self.s.unary:
                st = self.s.unary[f.name]
                return lambda o: o in st
            if f.name in self.s.binary:
                st = self.s.binary[f.name]
                return lambda a: (lambda b: (a, b) in st)
            raise UnboundName(f.name)
        if t is Id:
            return lambda a: (lambda b: a == b)
        if t is Exists:
            if isinstance(f.arg, DBLambda):
                return any(self.ev(f.arg.body, e.push(o)) for o in self.U)
            p = self.ev(f.arg, e)
            return any(p(o) for o in self.U)
        if t is DBLambda:
            return lambda o: self.ev(f.body, e.push(o))
        if t is NamedLambda:
            return lambda v: self.ev(f.body, e.bind(f.name, v))
        if t is Prime:
            s2 = e.nth(2)
            return self.ev(f.arg, e.with_stack((s2, s2) + e.stack))
        if t is Tilde:
            s1, s2 = e.nth(1), e.nth(2)
            return self.ev(f.arg, e.with_stack((s2, s1) + e.stack))
        if t is CardGeq:
            return f.k == 0 or self.count(f.arg, e, f.k) >= f.k
        if t is Star:
            return self.rtc_holds(f.arg, e)
        return self.sugar(f, e)

    def sugar(self, f: Formula, e: Env) -> Any:
        ev = self.ev
        if isinstance(f, Or):
            return bool(ev(f.left, e)) or bool(ev(f.right, e))
        if isinstance(f, Implies):
            return (not ev(f.left, e)) or bool(ev(f.right, e))
        if isinstance(f, Iff):
            return bool(ev(f.left, e)) == bool(ev(f.right, e))
        if isinstance(f, CurlyBrace):
            return any(ev(f.arg, e.push(o)) for o in self.U)
        if isinstance(f, SquareBrace):
            return all(ev(f.arg, e.push(o)) for o in self.U)
        if isinstance(f, CardEq):
            return self.count(f.arg, e) == f.k
        if isinstance(f, CardLeq):
            return self.count(f.arg, e) <= f.k
        if isinstance(f, SumCardGeq):
            return sum(self.count(a, e) for a in f.args) >= f.k
        if isinstance(f, SumCardEq):
            return sum(self.count(a, e) for a in f.args) == f.k
        if isinstance(f, Disjoint):
            for o in self.U:
                if sum(1 for a in f.args if ev(a, e.push(o))) > 1:
                    return False
            return True
        if isinstance(f, Partition):
            for o in self.U:
                eo = e.push(o)
                hits = sum(1 for a in f.parts if ev(a, eo))
                if hits > 1 or bool(ev(f.whole, eo)) != (hits > 0):
                    return False
            return True
        if isinstance(f, SetMinus):
            return bool(ev(f.left, e)) and not ev(f.right, e)
        if isinstance(f, Compose):
            return self.compose(f.left, f.right, e)
        if isinstance(f, TransClosurePlus):
            return self.tc(f.arg, e)
        if isinstance(f, Acyclic):
            x = e.nth(1)
            return not self.tc(f.arg, e.push(x))
        if isinstance(f, Tree):
            u = _disj_sugar(f.args)
            x = e.nth(1)
            if self.tc(u, e.push(x)):
                return False
            for n in self.U:
                en = e.push(n)
                if not self.rtc_holds(u, en):
                    continue
                indeg = 0
                for a in f.args:
                    for o in self.U:
                        # ~a at (o, n, ...) reads a at (n, o, ...)
                        if ev(a, e.with_stack((n, o, o, n) + e.stack)):
                            indeg += 1
                if indeg > 1:
                    return False
            return True
        if isinstance(f, Image):
            return any(ev(f.set, e.push(o)) and ev(Tilde(f.rel), e.push(o)) for o in self.U)
        if isinstance(f, Wlp):
            return all((not ev(f.rel, e.push(o))) or ev(f.set, e.push(o)) for o in self.U)
        if isinstance(f, Let):
            k = rel_arity(f.type)
            if k is None:
                val = ev(f.defn, e)
            else:
                val = self.closure(f.defn, e, k, ())
            return ev(f.body, e.bind(f.name, val))
        if isinstance(f, Forall):
            return all(ev(f.body, e.bind(f.name, o)) for o in self.U)
        raise RoleLogicError(f"cannot evaluate {type(f).__name__}")

    def closure(self, body, e, k, args):
        if k == 0:
            return self.ev(body, e.with_stack(tuple(reversed(args)) + e.stack))
        return lambda o: self.closure(body, e, k - 1, args + (o,))


def _disj_sugar(fs):
    out = fs[0]
    for x in fs[1:]:
        out = Or(out, x)
    return out


def rtc(pairs, universe) -> set:
    """Reflexive-transitive closure by Warshall's algorithm."""
    reach = {a: {b for (x, b) in pairs if x == a} | {a} for a in universe}
    for k in universe:
        for i in universe:
            if k in reach[i]:
                reach[i] |= reach[k]
    return {(a, b) for a in universe for b in reach[a]}


_CORE_SET = {Var, Index, Id, Const, And, Not, Exists, DBLambda, NamedLambda, App,
             Prime, Tilde, CardGeq, Star}
