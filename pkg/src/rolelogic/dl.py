"""Description-logic concepts and roles, their set semantics and their
translation into role logic."""

from __future__ import annotations

from dataclasses import dataclass

from .core import rtc
from .errors import NonRL2Operator
from .formula import (
    And, CardGeq, Compose, Const, Formula, Id, Not, RelK, Star, Tilde, TypeContext, Var,
)
from .rl2 import RL2, PredB, PredU, RAnd, RCard, RId, RNot, RTilde, RTRUE
from .span import Node
from .structure import Structure


class Concept(Node):
    pass


class Role(Node):
    pass


@dataclass(frozen=True)
class Top(Concept):
    pass


@dataclass(frozen=True)
class AtomicC(Concept):
    name: str


@dataclass(frozen=True)
class CAnd(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True)
class CNot(Concept):
    arg: Concept


@dataclass(frozen=True)
class AtLeast(Concept):
    n: int
    role: Role
    concept: Concept

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("number restriction must be non-negative")


@dataclass(frozen=True)
class AtomicR(Role):
    name: str


@dataclass(frozen=True)
class Universal(Role):
    pass


@dataclass(frozen=True)
class RoleAnd(Role):
    left: Role
    right: Role


@dataclass(frozen=True)
class RoleNot(Role):
    arg: Role


@dataclass(frozen=True)
class Inverse(Role):
    arg: Role


@dataclass(frozen=True)
class Restrict(Role):
    """Pairs of the role whose second component belongs to the concept."""

    role: Role
    concept: Concept


@dataclass(frozen=True)
class IdOf(Role):
    concept: Concept


@dataclass(frozen=True)
class RoleCompose(Role):
    left: Role
    right: Role


@dataclass(frozen=True)
class RoleStar(Role):
    arg: Role


def c_or(a: Concept, b: Concept) -> Concept:
    return CNot(CAnd(CNot(a), CNot(b)))


def c_some(r: Role, c: Concept) -> Concept:
    return AtLeast(1, r, c)


def c_all(r: Role, c: Concept) -> Concept:
    return CNot(AtLeast(1, r, CNot(c)))


def c_atmost(n: int, r: Role, c: Concept) -> Concept:
    return CNot(AtLeast(n + 1, r, c))


def r_or(a: Role, b: Role) -> Role:
    return RoleNot(RoleAnd(RoleNot(a), RoleNot(b)))


def dl_vocabulary(t) -> tuple[set[str], set[str]]:
    """Concept names and role names occurring in ``t``."""
    cs: set[str] = set()
    rs: set[str] = set()

    def go(x):
        if isinstance(x, AtomicC):
            cs.add(x.name)
        elif isinstance(x, AtomicR):
            rs.add(x.name)
        for v in vars(x).values():
            if isinstance(v, Node):
                go(v)

    go(t)
    return cs, rs


def dl_context(t) -> TypeContext:
    cs, rs = dl_vocabulary(t)
    ctx = TypeContext()
    for c in cs:
        ctx[c] = RelK(1)
    for r in rs:
        ctx[r] = RelK(2)
    return ctx


# ---------------------------------------------------------------- semantics


def eval_concept(c: Concept, s: Structure) -> frozenset:
    if isinstance(c, Top):
        return frozenset(s.universe)
    if isinstance(c, AtomicC):
        return s.unary_of(c.name)
    if isinstance(c, CAnd):
        return eval_concept(c.left, s) & eval_concept(c.right, s)
    if isinstance(c, CNot):
        return frozenset(s.universe) - eval_concept(c.arg, s)
    if isinstance(c, AtLeast):
        r = eval_role(c.role, s)
        d = eval_concept(c.concept, s)
        return frozenset(x for x in s.universe
                         if sum(1 for y in d if (x, y) in r) >= c.n)
    raise TypeError(f"not a concept: {c!r}")


def eval_role(r: Role, s: Structure) -> frozenset:
    u = s.universe
    if isinstance(r, AtomicR):
        return s.binary_of(r.name)
    if isinstance(r, Universal):
        return frozenset((x, y) for x in u for y in u)
    if isinstance(r, RoleAnd):
        return eval_role(r.left, s) & eval_role(r.right, s)
    if isinstance(r, RoleNot):
        return frozenset((x, y) for x in u for y in u) - eval_role(r.arg, s)
    if isinstance(r, Inverse):
        return frozenset((y, x) for x, y in eval_role(r.arg, s))
    if isinstance(r, Restrict):
        d = eval_concept(r.concept, s)
        return frozenset(p for p in eval_role(r.role, s) if p[1] in d)
    if isinstance(r, IdOf):
        return frozenset((x, x) for x in eval_concept(r.concept, s))
    if isinstance(r, RoleCompose):
        a = eval_role(r.left, s)
        b = eval_role(r.right, s)
        return frozenset((x, z) for x, y in a for y2, z in b if y == y2)
    if isinstance(r, RoleStar):
        return frozenset(rtc(eval_role(r.arg, s), u))
    raise TypeError(f"not a role: {r!r}")


# ---------------------------------------------------------------- translation


def dl_to_rl2(t) -> RL2:
    """Concepts become formulas about slot 1; a role ``R`` holds at
    ``(slot2, slot1)`` exactly when the pair is in ``R``."""
    if isinstance(t, Top):
        return RTRUE
    if isinstance(t, AtomicC):
        return PredU(t.name)
    if isinstance(t, CAnd):
        return RAnd(dl_to_rl2(t.left), dl_to_rl2(t.right))
    if isinstance(t, (CNot, RoleNot)):
        return RNot(dl_to_rl2(t.arg))
    if isinstance(t, AtLeast):
        return RCard(t.n, RAnd(dl_to_rl2(t.role), dl_to_rl2(t.concept)))
    if isinstance(t, AtomicR):
        return PredB(t.name)
    if isinstance(t, Universal):
        return RTRUE
    if isinstance(t, RoleAnd):
        return RAnd(dl_to_rl2(t.left), dl_to_rl2(t.right))
    if isinstance(t, Inverse):
        return RTilde(dl_to_rl2(t.arg))
    if isinstance(t, Restrict):
        return RAnd(dl_to_rl2(t.role), dl_to_rl2(t.concept))
    if isinstance(t, IdOf):
        return RAnd(RId(), dl_to_rl2(t.concept))
    if isinstance(t, (RoleCompose, RoleStar)):
        raise NonRL2Operator(
            f"{type(t).__name__} has no two-variable counterpart; use dl_to_full")
    raise TypeError(f"not a DL term: {t!r}")


def dl_to_full(t) -> Formula:
    """Translation into full role logic; composition and closure included."""
    if isinstance(t, (Top, Universal)):
        return Const(True)
    if isinstance(t, (AtomicC, AtomicR)):
        return Var(t.name)
    if isinstance(t, (CAnd, RoleAnd)):
        return And(dl_to_full(t.left), dl_to_full(t.right))
    if isinstance(t, (CNot, RoleNot)):
        return Not(dl_to_full(t.arg))
    if isinstance(t, AtLeast):
        return CardGeq(t.n, And(dl_to_full(t.role), dl_to_full(t.concept)))
    if isinstance(t, Inverse):
        return Tilde(dl_to_full(t.arg))
    if isinstance(t, Restrict):
        return And(dl_to_full(t.role), dl_to_full(t.concept))
    if isinstance(t, IdOf):
        return And(Id(), dl_to_full(t.concept))
    if isinstance(t, RoleCompose):
        return Compose(dl_to_full(t.left), dl_to_full(t.right))
    if isinstance(t, RoleStar):
        return Star(dl_to_full(t.arg))
    raise TypeError(f"not a DL term: {t!r}")


def concept_satisfiable(c: Concept, n_max: int, **kw):
    """Bounded search for a structure with a non-empty extension of ``c``."""
    from .solver.bounded import check_sat_bounded

    return check_sat_bounded(dl_to_rl2(c), n_max, n_min=1, **kw)


def subsumes(c: Concept, d: Concept, n_max: int, **kw):
    """Bounded check of ``c`` being contained in ``d`` in every structure."""
    from .rl2 import r_implies
    from .solver.bounded import check_valid_bounded

    return check_valid_bounded(r_implies(dl_to_rl2(c), dl_to_rl2(d)), n_max, **kw)
