"""Conflict-driven clause learning with native cardinality constraints.

A cardinality constraint ``(t, k, lits)`` states ``t <=> sum(lits) >= k``.
Propagation explains every inference by a clause built on the fly, so the
constraints take part in conflict analysis like ordinary clauses.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ..errors import BudgetExceeded


@dataclass
class Stats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    restarts: int = 0
    seconds: float = 0.0


@dataclass
class SatOutcome:
    sat: bool
    model: list[bool] = field(default_factory=list)  # model[v] for v >= 1
    stats: Stats = field(default_factory=Stats)


def _luby(i: int) -> int:
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while (1 << k) - 1 != i:
        if i >= (1 << (k - 1)):
            i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1
    return 1 << (k - 1)


class Solver:
    def __init__(self, nvars: int):
        self.n = nvars
        self.value = [0] * (nvars + 1)
        self.level = [0] * (nvars + 1)
        self.reason: list = [None] * (nvars + 1)
        self.activity = [0.0] * (nvars + 1)
        self.phase = [False] * (nvars + 1)
        self.watches: list[list] = [[] for _ in range(2 * nvars + 2)]
        self.cards: list[tuple[int, int, list[int]]] = []
        self.card_occ: list[list[int]] = [[] for _ in range(nvars + 1)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.inc = 1.0
        self.heap = [(0.0, v) for v in range(1, nvars + 1)]
        heapq.heapify(self.heap)
        self.unsat = False
        self.pending_units: list[int] = []
        self.stats = Stats()

    # -- construction

    @staticmethod
    def _code(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def val(self, lit: int) -> int:
        v = self.value[lit if lit > 0 else -lit]
        return v if lit > 0 else -v

    def add_clause(self, lits) -> None:
        lits = sorted(set(lits), key=abs)
        if any(-l in lits for l in lits):
            return
        if not lits:
            self.unsat = True
            return
        if len(lits) == 1:
            self.pending_units.append(lits[0])
            return
        self.watches[self._code(lits[0])].append(lits)
        self.watches[self._code(lits[1])].append(lits)

    def add_card(self, t: int, k: int, lits) -> None:
        lits = list(lits)
        if k <= 0:
            self.pending_units.append(t)
            return
        if k > len(lits):
            self.pending_units.append(-t)
            return
        idx = len(self.cards)
        self.cards.append((t, k, lits))
        for v in {abs(t), *(abs(l) for l in lits)}:
            self.card_occ[v].append(idx)

    # -- assignment

    def _enqueue(self, lit: int, reason) -> bool:
        cur = self.val(lit)
        if cur == 1:
            return True
        if cur == -1:
            return False
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _check_card(self, idx: int):
        """Propagate one constraint; return a conflict clause or ``None``."""
        t, k, lits = self.cards[idx]
        val = self.val
        tv = val(t)
        trues = []
        falses = []
        free = []
        for l in lits:
            x = val(l)
            if x == 1:
                trues.append(l)
            elif x == -1:
                falses.append(l)
            else:
                free.append(l)
        m = len(lits)
        if len(trues) >= k:
            expl = [t] + [-l for l in trues[:k]]
            if tv == -1:
                return expl
            if tv == 0:
                self._enqueue(t, expl)
            return None
        if len(falses) > m - k:
            expl = [-t] + falses[: m - k + 1]
            if tv == 1:
                return expl
            if tv == 0:
                self._enqueue(-t, expl)
            return None
        if tv == 1 and len(falses) == m - k:
            for u in free:
                expl = [u, -t] + falses
                if not self._enqueue(u, expl):
                    return expl
        elif tv == -1 and len(trues) == k - 1:
            for u in free:
                expl = [-u, t] + [-l for l in trues]
                if not self._enqueue(-u, expl):
                    return expl
        return None

    def _propagate(self):
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = -p
            ws = self.watches[self._code(false_lit)]
            i = 0
            j = 0
            conflict = None
            while i < len(ws):
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if self.val(first) == 1:
                    ws[j] = c
                    j += 1
                    continue
                found = False
                for kk in range(2, len(c)):
                    if self.val(c[kk]) != -1:
                        c[1], c[kk] = c[kk], c[1]
                        self.watches[self._code(c[1])].append(c)
                        found = True
                        break
                if found:
                    continue
                ws[j] = c
                j += 1
                if self.val(first) == -1:
                    conflict = c
                    while i < len(ws):
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                else:
                    self._enqueue(first, c)
            del ws[j:]
            if conflict is not None:
                return conflict
            for idx in self.card_occ[abs(p)]:
                confl = self._check_card(idx)
                if confl is not None:
                    return confl
        return None

    # -- search

    def _bump(self, v: int):
        self.activity[v] += self.inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
        if self.value[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl):
        seen = set()
        learnt = [0]
        counter = 0
        p = None
        idx = len(self.trail) - 1
        cur = len(self.trail_lim)
        clause = confl
        while True:
            for q in clause:
                if p is not None and q == p:
                    continue
                v = abs(q)
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                self._bump(v)
                if self.level[v] >= cur:
                    counter += 1
                else:
                    learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen.discard(abs(p))
            counter -= 1
            if counter <= 0:
                break
            clause = self.reason[abs(p)]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _backtrack(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.phase[v] = lit > 0
            self.value[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def _pick(self) -> int:
        heap = self.heap
        while heap:
            _, v = heapq.heappop(heap)
            if self.value[v] == 0:
                return v
        for v in range(1, self.n + 1):
            if self.value[v] == 0:
                return v
        return 0

    def solve(self, max_conflicts: int | None = None, deadline: float | None = None) -> SatOutcome:
        start = time.monotonic()
        try:
            return self._solve(max_conflicts, deadline)
        finally:
            self.stats.seconds = time.monotonic() - start

    def _solve(self, max_conflicts, deadline) -> SatOutcome:
        if self.unsat:
            return SatOutcome(False, stats=self.stats)
        for u in self.pending_units:
            if not self._enqueue(u, None):
                return SatOutcome(False, stats=self.stats)
        for idx in range(len(self.cards)):
            if self._check_card(idx) is not None:
                return SatOutcome(False, stats=self.stats)
        if self._propagate() is not None:
            return SatOutcome(False, stats=self.stats)
        restart_no = 1
        limit = 64 * _luby(restart_no)
        since_restart = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    return SatOutcome(False, stats=self.stats)
                learnt, back = self._analyze(confl)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.watches[self._code(learnt[0])].append(learnt)
                    self.watches[self._code(learnt[1])].append(learnt)
                    self._enqueue(learnt[0], learnt)
                self.inc *= 1.05
                if max_conflicts is not None and self.stats.conflicts >= max_conflicts:
                    raise BudgetExceeded(f"conflict limit {max_conflicts} reached")
                if deadline is not None and self.stats.conflicts % 64 == 0 and time.monotonic() > deadline:
                    raise BudgetExceeded("time limit reached")
                continue
            if since_restart >= limit:
                self.stats.restarts += 1
                restart_no += 1
                limit = 64 * _luby(restart_no)
                since_restart = 0
                self._backtrack(0)
                continue
            v = self._pick()
            if v == 0:
                model = [False] + [self.value[u] == 1 for u in range(1, self.n + 1)]
                return SatOutcome(True, model, self.stats)
            self.stats.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if self.phase[v] else -v, None)


def solve_cnf(nvars: int, clauses, cards=(), **kw) -> SatOutcome:
    s = Solver(nvars)
    for c in clauses:
        s.add_clause(c)
    for t, k, lits in cards:
        s.add_card(t, k, lits)
    return s.solve(**kw)
