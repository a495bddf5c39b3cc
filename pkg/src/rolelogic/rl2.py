"""The index-free fragment RL2: syntax, two-slot semantics and coercion."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInFragment, UnboundName
from .formula import (
    Acyclic, And, App, CardEq, CardGeq, CardLeq, Compose, Const, CurlyBrace,
    DBLambda, Disjoint, Exists, Forall, Formula, Id, Iff, Image, Implies, Index,
    Let, NamedLambda, Not, Or, Partition, Prime, SetMinus, SquareBrace, Star,
    SumCardEq, SumCardGeq, Tilde, TransClosurePlus, Tree, TypeContext, Var, Wlp,
    rel_arity,
)
from .span import Node
from .structure import PairEnv, Structure


@dataclass(frozen=True)
class RL2(Node):
    def children(self) -> tuple["RL2", ...]:
        return ()


@dataclass(frozen=True)
class PredU(RL2):
    name: str


@dataclass(frozen=True)
class PredB(RL2):
    name: str


@dataclass(frozen=True)
class RId(RL2):
    pass


@dataclass(frozen=True)
class RConst(RL2):
    value: bool


@dataclass(frozen=True)
class RAnd(RL2):
    left: RL2
    right: RL2

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class ROr(RL2):
    left: RL2
    right: RL2

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class RNot(RL2):
    arg: RL2

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class RPrime(RL2):
    arg: RL2

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class RTilde(RL2):
    arg: RL2

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class RCard(RL2):
    k: int
    arg: RL2

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("counting threshold must be non-negative")

    def children(self):
        return (self.arg,)


RTRUE = RConst(True)
RFALSE = RConst(False)


# derived forms


def r_implies(a: RL2, b: RL2) -> RL2:
    return ROr(RNot(a), b)


def r_iff(a: RL2, b: RL2) -> RL2:
    return RAnd(r_implies(a, b), r_implies(b, a))


def r_brace(a: RL2) -> RL2:
    return RCard(1, a)


def r_square(a: RL2) -> RL2:
    return RNot(RCard(1, RNot(a)))


def r_card_eq(k: int, a: RL2) -> RL2:
    return RAnd(RCard(k, a), RNot(RCard(k + 1, a)))


def r_card_leq(k: int, a: RL2) -> RL2:
    return RNot(RCard(k + 1, a))


def r_image(a: RL2, r: RL2) -> RL2:
    """Objects with an ``r``-predecessor in ``a``."""
    return r_brace(RAnd(a, RTilde(r)))


def r_wlp(r: RL2, a: RL2) -> RL2:
    return r_square(r_implies(r, a))


def r_conj(items) -> RL2:
    items = list(items)
    if not items:
        return RTRUE
    out = items[0]
    for x in items[1:]:
        out = RAnd(out, x)
    return out


def r_disj(items) -> RL2:
    items = list(items)
    if not items:
        return RFALSE
    out = items[0]
    for x in items[1:]:
        out = ROr(out, x)
    return out


# semantics


def eval_rl2(f: RL2, s: Structure, e: PairEnv) -> bool:
    t = type(f)
    if t is PredU:
        return e.slot1 in s.unary_of(f.name)
    if t is PredB:
        return (e.slot2, e.slot1) in s.binary_of(f.name)
    if t is RAnd:
        return eval_rl2(f.left, s, e) and eval_rl2(f.right, s, e)
    if t is ROr:
        return eval_rl2(f.left, s, e) or eval_rl2(f.right, s, e)
    if t is RNot:
        return not eval_rl2(f.arg, s, e)
    if t is RId:
        return e.slot1 == e.slot2
    if t is RConst:
        return f.value
    if t is RPrime:
        return eval_rl2(f.arg, s, PairEnv(e.slot2, e.slot2))
    if t is RTilde:
        return eval_rl2(f.arg, s, e.swap())
    if t is RCard:
        if f.k == 0:
            return True
        n = 0
        for o in s.universe:
            if eval_rl2(f.arg, s, PairEnv(o, e.slot1)):
                n += 1
                if n >= f.k:
                    return True
        return False
    raise TypeError(f"not an RL2 formula: {f!r}")


def satisfying_set(f: RL2, s: Structure) -> set[int]:
    """``{o | f}`` with both slots set to ``o``."""
    return {o for o in s.universe if eval_rl2(f, s, PairEnv(o, o))}


def satisfying_pairs(f: RL2, s: Structure) -> set[tuple[int, int]]:
    """``{(a, b) | f}`` with slot 2 = ``a`` and slot 1 = ``b``."""
    return {(a, b) for a in s.universe for b in s.universe if eval_rl2(f, s, PairEnv(b, a))}


def vocabulary(f: RL2) -> tuple[set[str], set[str]]:
    u: set[str] = set()
    b: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, PredU):
            u.add(g.name)
        elif isinstance(g, PredB):
            b.add(g.name)
        stack.extend(g.children())
    return u, b


def rl2_size(f: RL2) -> int:
    return 1 + sum(rl2_size(c) for c in f.children())


# bridge to full role logic


def embed(f: RL2) -> Formula:
    """The same formula as a full role-logic term (default arguments implicit)."""
    t = type(f)
    if t is PredU or t is PredB:
        return Var(f.name)
    if t is RId:
        return Id()
    if t is RConst:
        return Const(f.value)
    if t is RAnd:
        return And(embed(f.left), embed(f.right))
    if t is ROr:
        return Or(embed(f.left), embed(f.right))
    if t is RNot:
        return Not(embed(f.arg))
    if t is RPrime:
        return Prime(embed(f.arg))
    if t is RTilde:
        return Tilde(embed(f.arg))
    if t is RCard:
        return CardGeq(f.k, embed(f.arg))
    raise TypeError(f"not an RL2 formula: {f!r}")


_NAMES = {
    Star: "transitive closure", TransClosurePlus: "transitive closure",
    Acyclic: "transitive closure", Tree: "transitive closure",
    Compose: "relation composition", Index: "de Bruijn index",
    DBLambda: "lambda", NamedLambda: "lambda", Let: "definition",
    Forall: "named quantifier", Exists: "explicit quantifier", App: "application",
}


def _arity(name: str, ctx) -> int | None:
    if ctx is not None:
        try:
            return rel_arity(ctx[name])
        except KeyError:
            raise UnboundName(name) from None
    return 1 if name[:1].isupper() else 2


def _default_pattern(f: Formula, ctx):
    """Recognize ``A #1``, ``f #2 #1`` and ``id #2 #1``."""
    if isinstance(f, App) and f.arg == Index(1):
        h = f.fn
        if isinstance(h, Var) and _arity(h.name, ctx) == 1:
            return PredU(h.name)
        if isinstance(h, App) and h.arg == Index(2):
            if isinstance(h.fn, Var) and _arity(h.fn.name, ctx) == 2:
                return PredB(h.fn.name)
            if isinstance(h.fn, Id):
                return RId()
    return None


def coerce_rl2(f: Formula, ctx: TypeContext | None = None) -> RL2:
    """View a full role-logic formula as RL2 or raise :class:`NotInFragment`.

    Without ``ctx`` the arity of a predicate follows its spelling
    (capitalized names are unary).
    """
    return _co(f, ctx, ())


def _co(f: Formula, ctx, path) -> RL2:
    def sub(i, g):
        return _co(g, ctx, path + (i,))

    if isinstance(f, Var):
        k = _arity(f.name, ctx)
        if k == 1:
            return PredU(f.name, span=f.span)
        if k == 2:
            return PredB(f.name, span=f.span)
        raise NotInFragment(f"symbol {f.name} of arity {k}", path)
    if isinstance(f, Id):
        return RId(span=f.span)
    if isinstance(f, Const):
        return RConst(f.value, span=f.span)
    if isinstance(f, App):
        d = _default_pattern(f, ctx)
        if d is not None:
            return d
        # report the innermost offender first
        for i, c in enumerate(f.children()):
            if isinstance(c, (Index, DBLambda, NamedLambda, Star)):
                _co(c, ctx, path + (i,))
        raise NotInFragment("application", path)
    if isinstance(f, And):
        return RAnd(sub(0, f.left), sub(1, f.right), span=f.span)
    if isinstance(f, Or):
        return ROr(sub(0, f.left), sub(1, f.right), span=f.span)
    if isinstance(f, Implies):
        return r_implies(sub(0, f.left), sub(1, f.right))
    if isinstance(f, Iff):
        return r_iff(sub(0, f.left), sub(1, f.right))
    if isinstance(f, SetMinus):
        return RAnd(sub(0, f.left), RNot(sub(1, f.right)))
    if isinstance(f, Not):
        return RNot(sub(0, f.arg), span=f.span)
    if isinstance(f, Prime):
        return RPrime(sub(0, f.arg), span=f.span)
    if isinstance(f, Tilde):
        return RTilde(sub(0, f.arg), span=f.span)
    if isinstance(f, CardGeq):
        return RCard(f.k, sub(0, f.arg), span=f.span)
    if isinstance(f, CardEq):
        return r_card_eq(f.k, sub(0, f.arg))
    if isinstance(f, CardLeq):
        return r_card_leq(f.k, sub(0, f.arg))
    if isinstance(f, CurlyBrace):
        return r_brace(sub(0, f.arg))
    if isinstance(f, SquareBrace):
        return r_square(sub(0, f.arg))
    if isinstance(f, Image):
        return r_image(sub(0, f.set), sub(1, f.rel))
    if isinstance(f, Wlp):
        return r_wlp(sub(0, f.rel), sub(1, f.set))
    if isinstance(f, (SumCardGeq, SumCardEq)):
        from .core import _card_sum_eq, _card_sum_geq

        args = [embed(sub(i, a)) for i, a in enumerate(f.args)]
        build = _card_sum_geq if isinstance(f, SumCardGeq) else _card_sum_eq
        return _co(build(f.k, args), ctx, path)
    if isinstance(f, Disjoint):
        parts = [sub(i, a) for i, a in enumerate(f.args)]
        return _disjoint(parts)
    if isinstance(f, Partition):
        whole = sub(0, f.whole)
        parts = [sub(i + 1, a) for i, a in enumerate(f.parts)]
        return RAnd(_disjoint(parts), r_square(r_iff(whole, r_disj(parts))))
    if isinstance(f, Exists) and isinstance(f.arg, DBLambda):
        # the quantifier brace written out
        return r_brace(_co(f.arg.body, ctx, path + (0, 0)))
    for i, c in enumerate(f.children()):
        _co(c, ctx, path + (i,))
    raise NotInFragment(_NAMES.get(type(f), type(f).__name__), path)


def _disjoint(parts):
    pairs = [RNot(RAnd(parts[i], parts[j])) for i in range(len(parts)) for j in range(i + 1, len(parts))]
    return r_square(r_conj(pairs)) if pairs else RTRUE


# boolean shape analysis constraints


def _conjuncts(f: RL2):
    if isinstance(f, RAnd):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _is_c(f: RL2) -> bool:
    if isinstance(f, (PredU, RConst)):
        return True
    if isinstance(f, (RAnd, ROr)):
        return _is_c(f.left) and _is_c(f.right)
    if isinstance(f, RNot):
        return _is_c(f.arg)
    return False


def _is_r(f: RL2) -> bool:
    if isinstance(f, ROr):
        return _is_r(f.left) and _is_r(f.right)
    if isinstance(f, RNot):
        return isinstance(f.arg, PredB)
    return isinstance(f, PredB)


def _is_edge_body(f: RL2) -> bool:
    rs = 0
    for c in _conjuncts(f):
        if isinstance(c, RPrime) and _is_c(c.arg):
            continue
        if _is_c(c):
            continue
        if _is_r(c):
            rs += 1
            continue
        return False
    return rs == 1


def is_bsac(f: RL2) -> bool:
    """Membership in the boolean shape analysis constraint grammar."""
    if isinstance(f, (RAnd, ROr)):
        return is_bsac(f.left) and is_bsac(f.right)
    if isinstance(f, RNot):
        return is_bsac(f.arg)
    if isinstance(f, RCard) and f.k == 1:
        inner = f.arg
        if _is_c(inner):
            return True
        if isinstance(inner, RCard) and inner.k == 1:
            return _is_edge_body(inner.arg)
    return False
