"""Abstract syntax of full role logic and its simple types.

Core constructors are the ones every pass understands.  The remaining
constructors are shorthands that :func:`rolelogic.core.desugar` erases.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .span import Node


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Type:
    pass


@dataclass(frozen=True)
class BoolType(Type):
    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True)
class ObjType(Type):
    def __str__(self) -> str:
        return "obj"


@dataclass(frozen=True)
class Arrow(Type):
    arg: Type
    result: Type

    def __str__(self) -> str:
        k = rel_arity(self)
        if k is not None:
            return f"rel {k}"
        left = f"({self.arg})" if isinstance(self.arg, Arrow) else str(self.arg)
        return f"{left} -> {self.result}"


Bool = BoolType()
Obj = ObjType()


def RelK(k: int) -> Type:
    """``rel 0 = bool`` and ``rel (k+1) = obj -> rel k``."""
    if k < 0:
        raise ValueError("relation arity must be non-negative")
    t: Type = Bool
    for _ in range(k):
        t = Arrow(Obj, t)
    return t


def rel_arity(t: Type) -> int | None:
    """Inverse of :func:`RelK`; ``None`` if ``t`` is not a relation type."""
    k = 0
    while isinstance(t, Arrow):
        if t.arg != Obj:
            return None
        t = t.result
        k += 1
    return k if t == Bool else None


class TypeContext(dict):
    """Finite map from names to types.  Missing names are errors, never defaults."""

    def lookup(self, name: str) -> Type:
        from .errors import UnboundName

        try:
            return self[name]
        except KeyError:
            raise UnboundName(name) from None

    def extend(self, name: str, t: Type) -> "TypeContext":
        out = TypeContext(self)
        out[name] = t
        return out


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Formula(Node):
    def children(self) -> tuple["Formula", ...]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Formula):
                out.append(v)
            elif isinstance(v, tuple):
                out.extend(x for x in v if isinstance(x, Formula))
        return tuple(out)

    def map_children(self, fn) -> "Formula":
        changes = {}
        for f in fields(self):
            if f.name == "span":
                continue
            v = getattr(self, f.name)
            if isinstance(v, Formula):
                nv = fn(v)
                if nv is not v:
                    changes[f.name] = nv
            elif isinstance(v, tuple) and v and isinstance(v[0], Formula):
                nv = tuple(fn(x) for x in v)
                if any(a is not b for a, b in zip(nv, v)):
                    changes[f.name] = nv
        return replace(self, **changes) if changes else self


# core


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Index(Formula):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("de Bruijn indices start at 1")


@dataclass(frozen=True)
class Id(Formula):
    pass


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Exists(Formula):
    arg: Formula


@dataclass(frozen=True)
class DBLambda(Formula):
    body: Formula


@dataclass(frozen=True)
class NamedLambda(Formula):
    name: str
    type: Type
    body: Formula


@dataclass(frozen=True)
class App(Formula):
    fn: Formula
    arg: Formula


@dataclass(frozen=True)
class Prime(Formula):
    arg: Formula


@dataclass(frozen=True)
class Tilde(Formula):
    arg: Formula


@dataclass(frozen=True)
class CardGeq(Formula):
    k: int
    arg: Formula

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("counting threshold must be non-negative")


@dataclass(frozen=True)
class Star(Formula):
    """Reflexive-transitive closure ``F*``: the relation ``(#2, #1) |-> F``
    closed, then read at ``#2, #1``."""

    arg: Formula


CORE = (Var, Index, Id, Const, And, Not, Exists, DBLambda, NamedLambda, App,
        Prime, Tilde, CardGeq, Star)


# sugar


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class CurlyBrace(Formula):
    arg: Formula


@dataclass(frozen=True)
class SquareBrace(Formula):
    arg: Formula


@dataclass(frozen=True)
class CardEq(Formula):
    k: int
    arg: Formula


@dataclass(frozen=True)
class CardLeq(Formula):
    k: int
    arg: Formula


@dataclass(frozen=True)
class SumCardGeq(Formula):
    k: int
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class SumCardEq(Formula):
    k: int
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Disjoint(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Partition(Formula):
    whole: Formula
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class SetMinus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Compose(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class TransClosurePlus(Formula):
    arg: Formula


@dataclass(frozen=True)
class Acyclic(Formula):
    arg: Formula


@dataclass(frozen=True)
class Tree(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Image(Formula):
    """``image(A, r) = {A & ~r}``: objects with an ``r``-predecessor in ``A``."""

    set: Formula
    rel: Formula


@dataclass(frozen=True)
class Wlp(Formula):
    """``wlp(r, A) = [r => A]``."""

    rel: Formula
    set: Formula


@dataclass(frozen=True)
class Let(Formula):
    """``let P : T = defn in body``.  For ``T = rel k`` the definition is
    written with default arguments and gets ``k`` implicit de Bruijn lambdas."""

    name: str
    type: Type
    defn: Formula
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    """Named universal quantifier ``all v. F``."""

    name: str
    body: Formula


SUGAR = (Or, Implies, Iff, CurlyBrace, SquareBrace, CardEq, CardLeq, SumCardGeq,
         SumCardEq, Disjoint, Partition, SetMinus, Compose, TransClosurePlus,
         Acyclic, Tree, Image, Wlp, Let, Forall)

TRUE = Const(True)
FALSE = Const(False)


def conj(items) -> Formula:
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disj(items) -> Formula:
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


def ex(name: str, body: Formula) -> Formula:
    """``ex v. F`` as the core term ``Exists(lam v : obj. F)``."""
    return Exists(NamedLambda(name, Obj, body))


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in f.children())


def walk(f: Formula):
    yield f
    for c in f.children():
        yield from walk(c)
