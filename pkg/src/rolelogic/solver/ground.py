"""Grounding of first-order formulas with counting over a universe of size n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import BudgetExceeded
from ..fo import AtomB, AtomU, Eq, ExistsGeq, FAnd, FConst, FNot, FO, FOr, free_vars, predicates
from ..structure import Structure


@dataclass
class CardConstraint:
    """``out <=> (sum(lits) kind k)``; ``out=None`` means the constraint must hold."""

    kind: str
    k: int
    lits: list[int]
    out: int | None = None

    def __post_init__(self):
        if self.kind not in (">=", "<=", "="):
            raise ValueError(f"unknown threshold kind {self.kind!r}")
        if self.k < 0:
            raise ValueError("threshold must be non-negative")


@dataclass
class GroundProblem:
    nvars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    cards: list[CardConstraint] = field(default_factory=list)
    atoms: dict = field(default_factory=dict)  # (pred, elements) -> variable
    size: int = 0
    unary: tuple[str, ...] = ()
    binary: tuple[str, ...] = ()

    def new_var(self) -> int:
        self.nvars += 1
        return self.nvars

    def atom(self, pred: str, args: tuple) -> int:
        key = (pred, args)
        v = self.atoms.get(key)
        if v is None:
            v = self.atoms[key] = self.new_var()
        return v

    def decode(self, model) -> Structure:
        elems = range(1, self.size + 1)
        unary = {a: {e for e in elems if _true(model, self.atoms.get((a, (e,))))} for a in self.unary}
        binary = {f: {(x, y) for x in elems for y in elems
                      if _true(model, self.atoms.get((f, (x, y))))} for f in self.binary}
        return Structure(self.size, unary, binary)

    def check(self):
        for c in self.clauses:
            for l in c:
                if not (1 <= abs(l) <= self.nvars):
                    raise ValueError(f"literal {l} references an undeclared variable")
        for c in self.cards:
            for l in c.lits + ([c.out] if c.out else []):
                if not (1 <= abs(l) <= self.nvars):
                    raise ValueError(f"literal {l} references an undeclared variable")


def _true(model, v) -> bool:
    return v is not None and bool(model[v])


class _Grounder:
    def __init__(self, p: GroundProblem, max_clauses: int):
        self.p = p
        self.max = max_clauses
        self.memo: dict = {}
        self.gates: dict = {}
        self.fv: dict = {}

    def emit(self, clause):
        self.p.clauses.append(clause)
        if len(self.p.clauses) + len(self.p.cards) > self.max:
            raise BudgetExceeded(f"grounding exceeded {self.max} clauses")

    def and_gate(self, lits):
        out = []
        seen = set()
        for l in lits:
            if l is True:
                continue
            if l is False or -l in seen:
                return False
            if l not in seen:
                seen.add(l)
                out.append(l)
        if not out:
            return True
        if len(out) == 1:
            return out[0]
        key = ("and", frozenset(out))
        g = self.gates.get(key)
        if g is not None:
            return g
        g = self.p.new_var()
        for l in out:
            self.emit([-g, l])
        self.emit([g] + [-l for l in out])
        self.gates[key] = g
        return g

    def or_gate(self, lits):
        r = self.and_gate([_neg(l) for l in lits])
        return _neg(r)

    def card_gate(self, k, lits):
        n_true = sum(1 for l in lits if l is True)
        rest = [l for l in lits if l is not True and l is not False]
        k -= n_true
        if k <= 0:
            return True
        if k > len(rest):
            return False
        if k == 1:
            return self.or_gate(rest)
        if k == len(rest):
            return self.and_gate(rest)
        key = ("card", k, tuple(sorted(rest)))
        g = self.gates.get(key)
        if g is not None:
            return g
        g = self.p.new_var()
        self.p.cards.append(CardConstraint(">=", k, list(rest), g))
        self.gates[key] = g
        return g

    def free(self, f):
        r = self.fv.get(id(f))
        if r is None:
            r = self.fv[id(f)] = tuple(sorted(free_vars(f)))
        return r

    def go(self, f: FO, a: dict):
        key = (id(f), tuple(a[v] for v in self.free(f)))
        r = self.memo.get(key)
        if r is None:
            r = self.memo[key] = self._go(f, a)
        return r

    def _go(self, f: FO, a: dict):
        t = type(f)
        if t is AtomU:
            return self.p.atom(f.pred, (a[f.var],))
        if t is AtomB:
            return self.p.atom(f.pred, (a[f.left], a[f.right]))
        if t is Eq:
            return a[f.left] == a[f.right]
        if t is FConst:
            return f.value
        if t is FNot:
            return _neg(self.go(f.arg, a))
        if t is FAnd:
            return self.and_gate(self._flat(f, FAnd, a))
        if t is FOr:
            return self.or_gate(self._flat(f, FOr, a))
        if t is ExistsGeq:
            lits = []
            inner = dict(a)
            for o in range(1, self.p.size + 1):
                inner[f.var] = o
                lits.append(self.go(f.body, inner))
            return self.card_gate(f.k, lits)
        raise TypeError(f"cannot ground {f!r}")

    def _flat(self, f, kind, a):
        out = []
        stack = [f]
        while stack:
            g = stack.pop()
            if type(g) is kind:
                stack.append(g.right)
                stack.append(g.left)
            else:
                out.append(self.go(g, a))
        return out


def _neg(l):
    if l is True:
        return False
    if l is False:
        return True
    return -l


def ground(f: FO, n: int, unary=None, binary=None, symmetry: bool = True,
           max_clauses: int = 1_000_000) -> GroundProblem:
    """Propositional problem satisfiable iff ``f`` (free variables read
    existentially) has a model with exactly ``n`` elements."""
    if n < 0:
        raise ValueError("universe size must be non-negative")
    fu, fb = predicates(f)
    unary = tuple(sorted(set(unary or ()) | fu))
    binary = tuple(sorted(set(binary or ()) | fb))
    p = GroundProblem(size=n, unary=unary, binary=binary)
    for a in unary:
        for e in range(1, n + 1):
            p.atom(a, (e,))
    for r in binary:
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                p.atom(r, (x, y))
    g = _Grounder(p, max_clauses)
    fv = sorted(free_vars(f))
    roots = []
    for vals in itertools.product(range(1, n + 1), repeat=len(fv)):
        roots.append(g.go(f, dict(zip(fv, vals))))
    root = g.or_gate(roots)
    if root is False:
        p.clauses.append([])
    elif root is not True:
        g.emit([root])
    if symmetry and unary and n >= 2:
        _lex_chain(p, g, unary, n)
    return p


def _lex_chain(p: GroundProblem, g: _Grounder, unary, n: int):
    """Unary signatures of consecutive elements are lexicographically
    non-increasing.  Every structure is isomorphic to one that satisfies
    this, so satisfiability is unchanged."""
    for e in range(1, n):
        xs = [p.atom(a, (e,)) for a in unary]
        ys = [p.atom(a, (e + 1,)) for a in unary]
        eq_prev = None  # None: the empty prefix is equal
        for x, y in zip(xs, ys):
            # while the prefix is equal, y may not exceed x
            g.emit(([-eq_prev] if eq_prev else []) + [x, -y])
            eq = p.new_var()
            if eq_prev:
                g.emit([-eq, eq_prev])
            g.emit([-eq, -x, y])
            g.emit([-eq, x, -y])
            base = [-eq_prev] if eq_prev else []
            g.emit([eq] + base + [x, y])
            g.emit([eq] + base + [-x, -y])
            eq_prev = eq
