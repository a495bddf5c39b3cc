"""First-order logic with counting (D2, C2) and its index form I2."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .span import Node
from .structure import PairEnv, Structure


@dataclass(frozen=True)
class FO(Node):
    """Shared base of first-order and I2 formulas."""

    def children(self) -> tuple["FO", ...]:
        return ()


@dataclass(frozen=True)
class FConst(FO):
    value: bool


@dataclass(frozen=True)
class FAnd(FO):
    left: FO
    right: FO

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class FOr(FO):
    left: FO
    right: FO

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class FNot(FO):
    arg: FO

    def children(self):
        return (self.arg,)


# named-variable atoms and quantifier


@dataclass(frozen=True)
class AtomU(FO):
    pred: str
    var: str


@dataclass(frozen=True)
class AtomB(FO):
    pred: str
    left: str
    right: str


@dataclass(frozen=True)
class Eq(FO):
    left: str
    right: str


@dataclass(frozen=True)
class ExistsGeq(FO):
    k: int
    var: str
    body: FO

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("counting threshold must be non-negative")

    def children(self):
        return (self.body,)


# index atoms and counting for I2


@dataclass(frozen=True)
class IAtomU(FO):
    pred: str
    i: int


@dataclass(frozen=True)
class IAtomB(FO):
    pred: str
    i: int
    j: int


@dataclass(frozen=True)
class IEq(FO):
    i: int
    j: int


@dataclass(frozen=True)
class Card(FO):
    k: int
    body: FO

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("counting threshold must be non-negative")

    def children(self):
        return (self.body,)


TOP = FConst(True)
BOTTOM = FConst(False)


def f_and(items) -> FO:
    items = list(items)
    if not items:
        return TOP
    out = items[0]
    for x in items[1:]:
        out = FAnd(out, x)
    return out


def f_or(items) -> FO:
    items = list(items)
    if not items:
        return BOTTOM
    out = items[0]
    for x in items[1:]:
        out = FOr(out, x)
    return out


def f_implies(a: FO, b: FO) -> FO:
    return FOr(FNot(a), b)


def f_iff(a: FO, b: FO) -> FO:
    return FAnd(f_implies(a, b), f_implies(b, a))


def f_forall(v: str, body: FO) -> FO:
    return FNot(ExistsGeq(1, v, FNot(body)))


def fo_size(f: FO) -> int:
    return 1 + sum(fo_size(c) for c in f.children())


def rebuild(f: FO, kids) -> FO:
    kids = tuple(kids)
    if isinstance(f, FAnd):
        return FAnd(*kids)
    if isinstance(f, FOr):
        return FOr(*kids)
    if isinstance(f, FNot):
        return FNot(kids[0])
    if isinstance(f, ExistsGeq):
        return ExistsGeq(f.k, f.var, kids[0])
    if isinstance(f, Card):
        return Card(f.k, kids[0])
    return f


# variables


def atom_vars(f: FO) -> tuple[str, ...]:
    if isinstance(f, AtomU):
        return (f.var,)
    if isinstance(f, (AtomB, Eq)):
        return (f.left, f.right)
    return ()


def free_vars(f: FO) -> frozenset[str]:
    if isinstance(f, ExistsGeq):
        return free_vars(f.body) - {f.var}
    out = frozenset(atom_vars(f))
    for c in f.children():
        out |= free_vars(c)
    return out


def all_vars(f: FO) -> set[str]:
    out = set(atom_vars(f))
    if isinstance(f, ExistsGeq):
        out.add(f.var)
    for c in f.children():
        out |= all_vars(c)
    return out


def capturing(v: str, f: FO) -> frozenset[str]:
    """Bound variables on the way to the free occurrences of ``v``."""
    if isinstance(f, ExistsGeq):
        if f.var == v or v not in free_vars(f.body):
            return frozenset()
        return capturing(v, f.body) | {f.var}
    out: frozenset[str] = frozenset()
    for c in f.children():
        out |= capturing(v, c)
    return out


def rename_free(f: FO, m: dict) -> FO:
    """Rename free variables according to ``m`` (no capture check)."""
    if isinstance(f, AtomU):
        return AtomU(f.pred, m.get(f.var, f.var))
    if isinstance(f, AtomB):
        return AtomB(f.pred, m.get(f.left, f.left), m.get(f.right, f.right))
    if isinstance(f, Eq):
        return Eq(m.get(f.left, f.left), m.get(f.right, f.right))
    if isinstance(f, ExistsGeq):
        inner = {k: v for k, v in m.items() if k != f.var}
        return ExistsGeq(f.k, f.var, rename_free(f.body, inner))
    return rebuild(f, (rename_free(c, m) for c in f.children()))


def predicates(f: FO) -> tuple[set[str], set[str]]:
    u: set[str] = set()
    b: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (AtomU, IAtomU)):
            u.add(g.pred)
        elif isinstance(g, (AtomB, IAtomB)):
            b.add(g.pred)
        stack.extend(g.children())
    return u, b


# evaluation


def eval_fo(f: FO, s: Structure, a: dict | None = None) -> bool:
    """Truth of ``f`` under the variable assignment ``a``."""
    a = a or {}
    t = type(f)
    if t is AtomU:
        return a[f.var] in s.unary_of(f.pred)
    if t is AtomB:
        return (a[f.left], a[f.right]) in s.binary_of(f.pred)
    if t is Eq:
        return a[f.left] == a[f.right]
    if t is FAnd:
        return eval_fo(f.left, s, a) and eval_fo(f.right, s, a)
    if t is FOr:
        return eval_fo(f.left, s, a) or eval_fo(f.right, s, a)
    if t is FNot:
        return not eval_fo(f.arg, s, a)
    if t is FConst:
        return f.value
    if t is ExistsGeq:
        if f.k == 0:
            return True
        n = 0
        inner = dict(a)
        for o in s.universe:
            inner[f.var] = o
            if eval_fo(f.body, s, inner):
                n += 1
                if n >= f.k:
                    return True
        return False
    raise TypeError(f"not a first-order formula: {f!r}")


def eval_i2(f: FO, s: Structure, e: PairEnv) -> bool:
    t = type(f)
    slot = (None, e.slot1, e.slot2)
    if t is IAtomU:
        return slot[f.i] in s.unary_of(f.pred)
    if t is IAtomB:
        return (slot[f.i], slot[f.j]) in s.binary_of(f.pred)
    if t is IEq:
        return slot[f.i] == slot[f.j]
    if t is FAnd:
        return eval_i2(f.left, s, e) and eval_i2(f.right, s, e)
    if t is FOr:
        return eval_i2(f.left, s, e) or eval_i2(f.right, s, e)
    if t is FNot:
        return not eval_i2(f.arg, s, e)
    if t is FConst:
        return f.value
    if t is Card:
        if f.k == 0:
            return True
        n = 0
        for o in s.universe:
            if eval_i2(f.body, s, PairEnv(o, e.slot1)):
                n += 1
                if n >= f.k:
                    return True
        return False
    raise TypeError(f"not an I2 formula: {f!r}")


# fragment checks


@dataclass(frozen=True)
class Check:
    ok: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _first_bad(f: FO, bad, path=()):
    # leftmost-innermost: children before the node itself
    for i, c in enumerate(f.children()):
        r = _first_bad(c, bad, path + (i,))
        if r is not None:
            return r
    why = bad(f)
    return (path, why) if why else None


def _verdict(f, bad) -> Check:
    r = _first_bad(f, bad)
    if r is None:
        return Check(True)
    return Check(False, r[0], r[1])


_FO_NODES = (FConst, FAnd, FOr, FNot, AtomU, AtomB, Eq, ExistsGeq)
_I2_NODES = (FConst, FAnd, FOr, FNot, IAtomU, IAtomB, IEq, Card)


def check_d2(f: FO) -> Check:
    """At most two free variables in every subformula."""
    def bad(g):
        if not isinstance(g, _FO_NODES):
            return f"{type(g).__name__} is not first-order"
        n = len(free_vars(g))
        return f"{n} free variables" if n > 2 else ""
    return _verdict(f, bad)


def check_c2(f: FO) -> Check:
    """Only the variables ``x`` and ``y``, bound or free."""
    def bad(g):
        if not isinstance(g, _FO_NODES):
            return f"{type(g).__name__} is not first-order"
        extra = set(atom_vars(g)) - {"x", "y"}
        if isinstance(g, ExistsGeq) and g.var not in ("x", "y"):
            extra.add(g.var)
        return f"variable(s) {sorted(extra)}" if extra else ""
    return _verdict(f, bad)


def check_i2(f: FO) -> Check:
    """Only the indices 1 and 2."""
    def bad(g):
        if not isinstance(g, _I2_NODES):
            return f"{type(g).__name__} is not an I2 construct"
        idx = ()
        if isinstance(g, IAtomU):
            idx = (g.i,)
        elif isinstance(g, (IAtomB, IEq)):
            idx = (g.i, g.j)
        out = [i for i in idx if i not in (1, 2)]
        return f"index #{out[0]}" if out else ""
    return _verdict(f, bad)


def binder_sequences(f: FO, prefix: str = ""):
    """Bound-variable sequence of every root-to-leaf path."""
    if isinstance(f, ExistsGeq):
        prefix = prefix + f.var
    kids = f.children()
    if not kids:
        yield prefix
    for c in kids:
        yield from binder_sequences(c, prefix)


_ALTERNATING = re.compile(r"(y|)(xy)*(x|)")


def is_alternating(f: FO) -> bool:
    """Every path's binders match ``(y|e)(xy)*(x|e)``."""
    return all(_ALTERNATING.fullmatch(p) for p in binder_sequences(f))
