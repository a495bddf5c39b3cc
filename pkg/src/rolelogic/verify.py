"""Statements of a small imperative language as RL2 transition relations.

A relation between a pre-state and a post-state is an RL2 formula in which
pre-state predicates carry the tag ``0`` (``A@0``), post-state predicates
are untagged, and intermediate states of sequential composition use the
tags ``1, 2, ...``.  Procedure parameters are sets fixed for the whole
execution; they are never tagged and never framed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ProgramError, RoleLogicError, SeqInSpecBody, UnknownClaimTarget, UnknownTag,
    UnresolvedCall,
)
from .formula import Formula, RelK, TypeContext, Var
from .rl2 import (
    RL2, PredB, PredU, RAnd, RCard, RConst, RNot, ROr, RPrime, RTilde, RTRUE,
    coerce_rl2, embed, eval_rl2, r_brace, r_conj, r_iff, r_implies, r_square,
)
from .span import Node
from .structure import PairEnv, Structure

ERROR = "error"


# ---------------------------------------------------------------- syntax


@dataclass(frozen=True)
class Statement(Node):
    pass


@dataclass(frozen=True)
class AssignU(Statement):
    name: str
    value: Formula


@dataclass(frozen=True)
class AssignF(Statement):
    """``F1.f := F2``"""

    src: Formula
    field: str
    value: Formula


@dataclass(frozen=True)
class AssignFInv(Statement):
    """``F1.~f := F2``"""

    src: Formula
    field: str
    value: Formula


@dataclass(frozen=True)
class Call(Statement):
    name: str
    args: tuple[Formula, ...] = ()


@dataclass(frozen=True)
class Assume(Statement):
    cond: Formula


@dataclass(frozen=True)
class Assert(Statement):
    cond: Formula


@dataclass(frozen=True)
class Spec(Statement):
    body: Formula


@dataclass(frozen=True)
class Choice(Statement):
    left: Statement
    right: Statement


@dataclass(frozen=True)
class Conj(Statement):
    left: Statement
    right: Statement


@dataclass(frozen=True)
class Seq(Statement):
    left: Statement
    right: Statement


@dataclass(frozen=True)
class ModItem(Node):
    pass


@dataclass(frozen=True)
class UnaryMod(ModItem):
    """``A <= F``: ``A`` may lose elements or gain elements of ``F``."""

    name: str
    value: Formula


@dataclass(frozen=True)
class FieldMod(ModItem):
    """``F1.f <= F2``"""

    src: Formula
    field: str
    value: Formula


@dataclass(frozen=True)
class FieldInvMod(ModItem):
    """``F1.~f <= F2``"""

    src: Formula
    field: str
    value: Formula


# extra atoms of specification formulas


@dataclass(frozen=True)
class Old(Formula):
    arg: Formula


@dataclass(frozen=True)
class StmtAtom(Formula):
    """An assignment or call used inside a specification formula."""

    stmt: Statement


@dataclass(frozen=True)
class ModifyAtom(Formula):
    items: tuple[ModItem, ...]


@dataclass(frozen=True)
class SkipAtom(Formula):
    pass


@dataclass(frozen=True)
class Vocabulary:
    unary: tuple[str, ...] = ()
    binary: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "unary", tuple(n for n in self.unary if n != ERROR))
        clash = set(self.unary) & set(self.binary)
        if clash:
            raise ProgramError(f"declared both unary and binary: {sorted(clash)}")

    @property
    def unary_all(self) -> tuple[str, ...]:
        return self.unary + (ERROR,)

    def arity(self, base: str) -> int | None:
        if base in self.unary or base == ERROR:
            return 1
        if base in self.binary:
            return 2
        return None


@dataclass(frozen=True)
class Procedure:
    name: str
    params: tuple[str, ...]
    body: Statement


@dataclass
class Program:
    vocab: Vocabulary
    procedures: dict[str, Procedure] = field(default_factory=dict)
    claims: list[tuple[str, str]] = field(default_factory=list)

    def validate(self):
        for p in self.procedures.values():
            for a in p.params:
                if self.vocab.arity(a) is not None:
                    raise ProgramError(f"parameter {a} of {p.name} shadows a state predicate")
        for impl, spec in self.claims:
            for n in (impl, spec):
                if n not in self.procedures:
                    raise UnknownClaimTarget(f"claim mentions unknown procedure {n}")
            if len(self.procedures[impl].params) != len(self.procedures[spec].params):
                raise ProgramError(f"claim {impl} => {spec}: parameter counts differ")
            if has_seq(self.procedures[spec].body):
                raise SeqInSpecBody(f"{spec} is used as a specification but contains ';'")


def has_seq(s) -> bool:
    if isinstance(s, Seq):
        return True
    if isinstance(s, (Choice, Conj)):
        return has_seq(s.left) or has_seq(s.right)
    if isinstance(s, Spec):
        return _fe_has_seq(s.body)
    return False


def _fe_has_seq(f: Formula) -> bool:
    if isinstance(f, StmtAtom):
        return has_seq(f.stmt)
    return any(_fe_has_seq(c) for c in f.children())


# ---------------------------------------------------------------- versions


def versioned(base: str, tag) -> str:
    return base if tag is None else f"{base}@{tag}"


def split_version(name: str):
    if "@" in name:
        base, tag = name.rsplit("@", 1)
        return base, int(tag)
    return name, None


def _check_tag(t):
    if t is not None and not (isinstance(t, int) and not isinstance(t, bool) and t >= 0):
        raise UnknownTag(f"vocabulary tag must be None or a non-negative integer, got {t!r}")


def rename_vocab(f: RL2, i, j, vocab: Vocabulary) -> RL2:
    """Replace every predicate of version ``i`` by its version ``j``."""
    _check_tag(i)
    _check_tag(j)
    return _ren(f, i, j, vocab)


def _ren(f: RL2, i, j, vocab) -> RL2:
    if isinstance(f, (PredU, PredB)):
        base, tag = split_version(f.name)
        if tag == i and vocab.arity(base) is not None:
            return type(f)(versioned(base, j))
        return f
    if isinstance(f, (RAnd, ROr)):
        return type(f)(_ren(f.left, i, j, vocab), _ren(f.right, i, j, vocab))
    if isinstance(f, (RNot, RPrime, RTilde)):
        return type(f)(_ren(f.arg, i, j, vocab))
    if isinstance(f, RCard):
        return RCard(f.k, _ren(f.arg, i, j, vocab))
    return f


def rename_struct(s: Structure, i, j, vocab: Vocabulary) -> Structure:
    """Structure renaming: predicates of version ``i`` become version ``j``."""
    _check_tag(i)
    _check_tag(j)

    def rn(name):
        base, tag = split_version(name)
        if tag == i and vocab.arity(base) is not None:
            return versioned(base, j)
        return name

    return Structure(s.size, {rn(k): v for k, v in s.unary.items()},
                     {rn(k): v for k, v in s.binary.items()})


def select_version(s: Structure, tag, vocab: Vocabulary, params=()) -> Structure:
    """The plain ``L``-structure stored under ``tag`` (plus parameters)."""
    u = {b: s.unary.get(versioned(b, tag), frozenset()) for b in vocab.unary_all}
    for p in params:
        u[p] = s.unary.get(p, frozenset())
    b = {f: s.binary.get(versioned(f, tag), frozenset()) for f in vocab.binary}
    return Structure(s.size, u, b)


def combine(pre: Structure, post: Structure, vocab: Vocabulary, params=()) -> Structure:
    """Pre-state under tag 0, post-state untagged, parameters from ``pre``."""
    if pre.size != post.size:
        raise RoleLogicError("pre- and post-state have different universes")
    u = {}
    b = {}
    for a in vocab.unary_all:
        u[versioned(a, 0)] = pre.unary.get(a, frozenset())
        u[a] = post.unary.get(a, frozenset())
    for p in params:
        u[p] = pre.unary.get(p, frozenset())
    for f in vocab.binary:
        b[versioned(f, 0)] = pre.binary.get(f, frozenset())
        b[f] = post.binary.get(f, frozenset())
    return Structure(pre.size, u, b)


class VersionContext(TypeContext):
    """Arity lookup that understands tagged names and parameters."""

    def __init__(self, vocab: Vocabulary, params=()):
        super().__init__()
        self.vocab = vocab
        self.params = set(params)

    def __missing__(self, name):
        base, _ = split_version(name)
        k = self.vocab.arity(base)
        if k is None and name in self.params:
            k = 1
        if k is None:
            raise KeyError(name)
        return RelK(k)

    def __contains__(self, name):
        try:
            self[name]
            return True
        except KeyError:
            return False


# ---------------------------------------------------------------- frames


def _eq_u(a: str) -> RL2:
    return r_square(r_iff(PredU(a), PredU(versioned(a, 0))))


def _eq_b(f: str) -> RL2:
    return r_square(r_square(r_iff(PredB(f), PredB(versioned(f, 0)))))


def frame(vocab: Vocabulary, keep_unary=None, keep_binary=None) -> RL2:
    """Everything except the given predicates keeps its value."""
    parts = [_eq_u(a) for a in vocab.unary if a != keep_unary]
    parts += [_eq_b(f) for f in vocab.binary if f != keep_binary]
    parts.append(_eq_u(ERROR))
    return r_conj(parts)


# ---------------------------------------------------------------- translation


class Translator:
    """Translation of statements; one instance allocates fresh tags monotonically."""

    def __init__(self, program: Program, strict_assert: bool = False):
        self.program = program
        self.vocab = program.vocab
        self.strict_assert = strict_assert
        self.next_tag = 1
        self._calls: list[str] = []
        self.params: set[str] = set()
        for p in program.procedures.values():
            self.params.update(p.params)

    # formulas

    def ctx(self) -> VersionContext:
        return VersionContext(self.vocab, self.params)

    def old_formula(self, f: Formula) -> Formula:
        if isinstance(f, Var):
            base, tag = split_version(f.name)
            if tag is None and self.vocab.arity(base) is not None:
                return Var(versioned(base, 0), span=f.span)
            return f
        return f.map_children(self.old_formula)

    def lower(self, f: Formula) -> Formula:
        """Resolve ``old``, embedded statements, modify and skip."""
        if isinstance(f, Old):
            return self.old_formula(self.lower(f.arg))
        if isinstance(f, StmtAtom):
            return embed(self.statement(f.stmt))
        if isinstance(f, ModifyAtom):
            return embed(self.modify(f.items))
        if isinstance(f, SkipAtom):
            return embed(self.skip())
        return f.map_children(self.lower)

    def rl2(self, f: Formula) -> RL2:
        return coerce_rl2(self.lower(f), self.ctx())

    def old(self, f: Formula) -> RL2:
        return rename_vocab(self.rl2(f), None, 0, self.vocab)

    def skip(self) -> RL2:
        return frame(self.vocab)

    # statements

    def statement(self, s: Statement) -> RL2:
        if isinstance(s, AssignU):
            if self.vocab.arity(s.name) != 1 or s.name == ERROR:
                raise ProgramError(f"{s.name} is not an assignable unary predicate")
            return RAnd(r_square(r_iff(PredU(s.name), self.old(s.value))),
                        frame(self.vocab, keep_unary=s.name))
        if isinstance(s, (AssignF, AssignFInv)):
            if self.vocab.arity(s.field) != 2:
                raise ProgramError(f"{s.field} is not a binary predicate")
            f = PredB(s.field)
            f0 = PredB(versioned(s.field, 0))
            src = self.old(s.src)
            val = self.old(s.value)
            if isinstance(s, AssignF):
                upd = r_square(r_iff(f, val))
                same = r_square(r_iff(f, f0))
            else:
                upd = r_square(r_iff(RTilde(f), val))
                same = r_square(r_iff(RTilde(f), RTilde(f0)))
            return r_conj([r_square(r_implies(src, upd)),
                           r_square(r_implies(RNot(src), same)),
                           frame(self.vocab, keep_binary=s.field)])
        if isinstance(s, Call):
            return self.call(s)
        if isinstance(s, Assume):
            return RAnd(self.old(s.cond), self.skip())
        if isinstance(s, Assert):
            c = self.old(s.cond)
            out = r_implies(c, self.skip())
            if self.strict_assert:
                out = RAnd(out, r_implies(RNot(c), r_brace(PredU(ERROR))))
            return out
        if isinstance(s, Spec):
            return self.rl2(s.body)
        if isinstance(s, Choice):
            return ROr(self.statement(s.left), self.statement(s.right))
        if isinstance(s, Conj):
            return RAnd(self.statement(s.left), self.statement(s.right))
        if isinstance(s, Seq):
            k = self.next_tag
            self.next_tag += 1
            first = rename_vocab(self.statement(s.left), None, k, self.vocab)
            second = rename_vocab(self.statement(s.right), 0, k, self.vocab)
            guard = r_square(RNot(PredU(versioned(ERROR, k))))
            return RAnd(first, r_implies(guard, second))
        raise ProgramError(f"unknown statement {s!r}")

    def call(self, s: Call) -> RL2:
        proc = self.program.procedures.get(s.name)
        if proc is None:
            raise UnresolvedCall(f"call to undefined procedure {s.name}")
        if len(proc.params) != len(s.args):
            raise UnresolvedCall(f"{s.name} expects {len(proc.params)} argument(s), got {len(s.args)}")
        if has_seq(proc.body):
            raise UnresolvedCall(
                f"{s.name} contains sequential composition; calls must resolve to specifications")
        if s.name in self._calls:
            raise UnresolvedCall(f"recursive specification {s.name}")
        self._calls.append(s.name)
        try:
            body = self.statement(proc.body)
        finally:
            self._calls.pop()
        actuals = {p: self.old(a) for p, a in zip(proc.params, s.args)}
        return subst_preds(body, actuals)

    def modify(self, items) -> RL2:
        return translate_modify(items, self.vocab, self.old)


def subst_preds(f: RL2, m: dict) -> RL2:
    if isinstance(f, PredU) and f.name in m:
        return m[f.name]
    if isinstance(f, (RAnd, ROr)):
        return type(f)(subst_preds(f.left, m), subst_preds(f.right, m))
    if isinstance(f, (RNot, RPrime, RTilde)):
        return type(f)(subst_preds(f.arg, m))
    if isinstance(f, RCard):
        return RCard(f.k, subst_preds(f.arg, m))
    return f


def translate_modify(items, vocab: Vocabulary, old=None) -> RL2:
    """Frame condition allowing any finite sequence of the listed changes.

    Item formulas are read in the pre-state.  ``old`` turns a formula into
    its pre-state RL2 form; by default formulas are coerced and tagged 0.
    """
    if old is None:
        old = lambda f: rename_vocab(coerce_rl2(f, VersionContext(vocab)), None, 0, vocab)
    units: dict[str, list] = {}
    fields: dict[str, list] = {}
    for it in items:
        if isinstance(it, UnaryMod):
            if vocab.arity(it.name) != 1:
                raise ProgramError(f"{it.name} is not a unary predicate")
            units.setdefault(it.name, []).append(old(it.value))
        elif isinstance(it, (FieldMod, FieldInvMod)):
            if vocab.arity(it.field) != 2:
                raise ProgramError(f"{it.field} is not a binary predicate")
            fields.setdefault(it.field, []).append(
                (isinstance(it, FieldMod), old(it.src), old(it.value)))
        else:
            raise ProgramError(f"unknown modify item {it!r}")
    parts = []
    for a in vocab.unary_all:
        if a not in units:
            parts.append(_eq_u(a))
    for a in vocab.unary_all:
        if a in units:
            keep_out = r_conj([RNot(PredU(versioned(a, 0)))] + [RNot(g) for g in units[a]])
            parts.append(r_square(r_implies(keep_out, RNot(PredU(a)))))
    for f in vocab.binary:
        if f not in fields:
            parts.append(_eq_b(f))
    for f in vocab.binary:
        if f not in fields:
            continue
        fb, f0 = PredB(f), PredB(versioned(f, 0))
        untouched = []
        no_insert = [RNot(f0)]
        for fwd, src, val in fields[f]:
            if fwd:
                untouched.append(RNot(RPrime(src)))
                no_insert.append(RNot(RAnd(RPrime(src), val)))
            else:
                untouched.append(RNot(src))
                no_insert.append(RNot(RAnd(src, RTilde(val))))
        parts.append(r_square(r_square(r_implies(r_conj(untouched), r_iff(fb, f0)))))
        parts.append(r_square(r_square(r_implies(r_conj(no_insert), RNot(fb)))))
    return r_conj(parts)


def translate_statement(s: Statement, program: Program, strict_assert: bool = False) -> RL2:
    return Translator(program, strict_assert).statement(s)


# ---------------------------------------------------------------- claims


@dataclass
class ClaimResult:
    impl: str
    spec: str
    verdict: str  # "Verified", "Counterexample" or "Inconclusive"
    bound: int
    pre: Structure | None = None
    post: Structure | None = None
    model: Structure | None = None  # every version, intermediate ones included
    seconds: float = 0.0
    message: str = ""

    @property
    def name(self) -> str:
        return f"{self.impl} => {self.spec}"


def claim_formulas(program: Program, impl: str, spec: str, strict_assert: bool = False):
    """``(tr[S1], tr[S2] with the spec's parameters renamed)``."""
    program.validate()
    p1 = program.procedures[impl]
    p2 = program.procedures[spec]
    if has_seq(p2.body):
        raise SeqInSpecBody(f"{spec} contains ';' and cannot be used under negation")
    t = Translator(program, strict_assert)
    s1 = t.statement(p1.body)
    s2 = t.statement(p2.body)
    ren = {b: PredU(a) for a, b in zip(p1.params, p2.params)}
    s2 = subst_preds(s2, ren)
    return s1, s2


def check_claim(program: Program, claim: tuple[str, str], n_max: int,
                strict_assert: bool = False, error_free_start: bool = True,
                seconds: float = 60.0, max_clauses: int = 1_000_000) -> ClaimResult:
    """Bounded check that every transition of the implementation is allowed
    by the specification.

    With ``error_free_start`` only pre-states with an empty error set are
    considered.
    """
    import time

    from .solver.bounded import BUDGET, SAT, check_sat_bounded

    impl, spec = claim
    start = time.monotonic()
    s1, s2 = claim_formulas(program, impl, spec, strict_assert)
    query = RAnd(s1, RNot(s2))
    if error_free_start:
        query = RAnd(r_square(RNot(PredU(versioned(ERROR, 0)))), query)
    r = check_sat_bounded(query, n_max, seconds=seconds, max_clauses=max_clauses)
    out = ClaimResult(impl, spec, "Verified", n_max)
    if r.verdict == SAT:
        s = r.structure
        env = PairEnv(r.witness.get("y1", 0), r.witness.get("y2", 0))
        if not (eval_rl2(s1, s, env) and not eval_rl2(s2, s, env)):
            raise RoleLogicError("counterexample failed certification")
        params = program.procedures[impl].params
        out = ClaimResult(impl, spec, "Counterexample", r.bound,
                          pre=select_version(s, 0, program.vocab, params),
                          post=select_version(s, None, program.vocab), model=s)
    elif r.verdict == BUDGET:
        out = ClaimResult(impl, spec, "Inconclusive", r.bound, message=r.message)
    out.seconds = time.monotonic() - start
    return out


def holds_between(f: RL2, pre: Structure, post: Structure, vocab: Vocabulary, params=()) -> bool:
    """Truth of a closed transition formula without intermediate versions."""
    s = combine(pre, post, vocab, params)
    e = PairEnv(0, 0)
    return eval_rl2(f, s, e)


def states(n: int, vocab: Vocabulary, with_error: bool = True):
    """All ``L``-structures of size ``n`` (the error set included)."""
    from .structure import all_structures

    unary = vocab.unary_all if with_error else vocab.unary
    for s in all_structures(n, unary, vocab.binary):
        if not with_error:
            s = s.with_vocabulary(unary=(ERROR,))
        yield s


