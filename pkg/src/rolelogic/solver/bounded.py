"""Bounded satisfiability and validity with certified models."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..errors import BudgetExceeded, RoleLogicError
from ..fo import FNot, FO, eval_fo, free_vars, predicates
from ..formula import Formula, Not, TypeContext
from ..rl2 import RL2, RNot, coerce_rl2, eval_rl2, vocabulary
from ..structure import Env, PairEnv, Structure
from .dimacs import card_to_solver
from .ground import GroundProblem, ground
from .sat import Solver, Stats

SAT = "Sat"
UNSAT = "UnsatAtBound"
BUDGET = "BudgetExceeded"

DEFAULT_MAX_CLAUSES = 1_000_000
DEFAULT_SECONDS = 60.0


@dataclass
class SolveResult:
    """Outcome of a bounded search.  An unsatisfiable verdict always
    carries the bound it was established for."""

    verdict: str
    bound: int
    structure: Structure | None = None
    witness: dict | None = None
    certified: bool = False
    stats: Stats = field(default_factory=Stats)
    message: str = ""

    @property
    def sat(self) -> bool:
        return self.verdict == SAT

    def __str__(self) -> str:
        if self.verdict == SAT:
            return f"sat at size {self.bound}"
        if self.verdict == UNSAT:
            return f"unsat up to bound {self.bound}"
        return f"budget exceeded at size {self.bound}: {self.message}"


@dataclass
class ValidityResult:
    verdict: str  # "ValidUpToBound", "Counterexample" or "BudgetExceeded"
    bound: int
    counterexample: Structure | None = None
    witness: dict | None = None
    message: str = ""

    @property
    def valid(self) -> bool:
        return self.verdict == "ValidUpToBound"

    def __str__(self) -> str:
        if self.verdict == "ValidUpToBound":
            return f"valid up to bound {self.bound}"
        if self.verdict == "Counterexample":
            return f"counterexample of size {self.bound}"
        return f"budget exceeded at size {self.bound}: {self.message}"


def solve(p: GroundProblem, max_conflicts: int | None = None, seconds: float | None = None) -> SolveResult:
    """Solve a ground problem; the model is decoded but not certified here."""
    nvars, extra, cards = card_to_solver(p)
    s = Solver(nvars)
    for c in p.clauses:
        s.add_clause(c)
    for c in extra:
        s.add_clause(c)
    for t, k, lits in cards:
        s.add_card(t, k, lits)
    deadline = time.monotonic() + seconds if seconds else None
    try:
        out = s.solve(max_conflicts=max_conflicts, deadline=deadline)
    except BudgetExceeded as ex:
        return SolveResult(BUDGET, p.size, stats=s.stats, message=str(ex))
    if out.sat:
        return SolveResult(SAT, p.size, p.decode(out.model), stats=out.stats)
    return SolveResult(UNSAT, p.size, stats=out.stats)


class _Query:
    """A formula in one of the accepted shapes, with its first-order form
    and an independent evaluator for certification."""

    def __init__(self, f, ctx: TypeContext | None = None):
        self.original = f
        if isinstance(f, FO):
            self.fo = f
            self.kind = "fo"
        else:
            if isinstance(f, Formula):
                self.rl2 = coerce_rl2(f, ctx)
                self.kind = "full"
            elif isinstance(f, RL2):
                self.rl2 = f
                self.kind = "rl2"
            else:
                raise TypeError(f"cannot decide {type(f).__name__}")
            from ..translate import rl2_to_d2

            self.fo = rl2_to_d2(self.rl2)
        self.free = sorted(free_vars(self.fo))
        u, b = predicates(self.fo)
        if self.kind != "fo":
            ru, rb = vocabulary(self.rl2)
            u, b = u | ru, b | rb
        self.unary, self.binary = sorted(u), sorted(b)

    def negated(self) -> "_Query":
        q = object.__new__(_Query)
        q.__dict__.update(self.__dict__)
        q.fo = FNot(self.fo)
        if self.kind == "full":
            q.original = Not(self.original)
            q.rl2 = RNot(self.rl2)
        elif self.kind == "rl2":
            q.original = q.rl2 = RNot(self.rl2)
        else:
            q.original = q.fo
        return q

    def holds(self, s: Structure, w: dict) -> bool:
        if self.kind == "fo":
            return eval_fo(self.original, s, w)
        a = w.get("y1", 0)
        b = w.get("y2", 0)
        if self.kind == "rl2":
            return eval_rl2(self.original, s, PairEnv(a, b))
        from ..core import eval_formula

        return bool(eval_formula(self.original, s, Env((a, b))))

    def certify(self, s: Structure):
        """A witnessing assignment of the free variables, or ``None``."""
        import itertools

        for vals in itertools.product(s.universe, repeat=len(self.free)):
            w = dict(zip(self.free, vals))
            if self.holds(s, w):
                return w
        return None


def _search(q: _Query, n_max: int, n_min: int, max_clauses: int, seconds: float) -> SolveResult:
    total = Stats()
    deadline = time.monotonic() + seconds if seconds else None
    for n in range(n_min, n_max + 1):
        left = None if deadline is None else deadline - time.monotonic()
        if left is not None and left <= 0:
            return SolveResult(BUDGET, n, stats=total, message=f"time budget of {seconds}s used up")
        try:
            p = ground(q.fo, n, q.unary, q.binary, max_clauses=max_clauses)
        except BudgetExceeded as ex:
            return SolveResult(BUDGET, n, stats=total, message=str(ex))
        r = solve(p, seconds=left)
        for k in ("decisions", "propagations", "conflicts", "restarts", "seconds"):
            setattr(total, k, getattr(total, k) + getattr(r.stats, k))
        if r.verdict == BUDGET:
            r.stats = total
            return r
        if r.verdict == SAT:
            w = q.certify(r.structure)
            if w is None:
                raise RoleLogicError(f"solver model failed certification at size {n}: {r.structure!r}")
            r.witness = w
            r.certified = True
            r.stats = total
            return r
    return SolveResult(UNSAT, n_max, stats=total)


def check_sat_bounded(f, n_max: int, n_min: int = 0, ctx: TypeContext | None = None,
                      max_clauses: int = DEFAULT_MAX_CLAUSES, seconds: float = DEFAULT_SECONDS) -> SolveResult:
    """Search sizes ``n_min..n_max`` for a model; the first one found wins.

    ``f`` is a first-order formula (free variables read existentially), an
    RL2 formula, or a full role-logic formula inside RL2.  RL2 formulas are
    satisfied by a structure together with values for their two slots.
    ``seconds`` bounds the whole search, not each size.
    """
    return _search(_Query(f, ctx), n_max, n_min, max_clauses, seconds)


def check_valid_bounded(f, n_max: int, n_min: int = 0, ctx: TypeContext | None = None,
                        max_clauses: int = DEFAULT_MAX_CLAUSES,
                        seconds: float = DEFAULT_SECONDS) -> ValidityResult:
    """Validity for every size up to ``n_max`` by refuting the negation."""
    q = _Query(f, ctx).negated()
    r = _search(q, n_max, n_min, max_clauses, seconds)
    if r.verdict == SAT:
        return ValidityResult("Counterexample", r.bound, r.structure, r.witness)
    if r.verdict == BUDGET:
        return ValidityResult(BUDGET, r.bound, message=r.message)
    return ValidityResult("ValidUpToBound", n_max)
