"""Independent brute-force oracles used by the tests.

Nothing here calls the translations or the solver.  Enumeration is
vectorized with numpy: a batch of interpretations is a set of boolean
tables, one row per interpretation.
"""

from __future__ import annotations

import itertools

import numpy as np

from rolelogic import fo
from rolelogic.rl2 import PredB, PredU, RAnd, RCard, RConst, RId, RNot, ROr, RPrime, RTilde
from rolelogic.structure import Structure


class Space:
    """All interpretations of a vocabulary over the universe ``{1..n}``."""

    def __init__(self, n: int, unary, binary):
        self.n = n
        self.unary = tuple(unary)
        self.binary = tuple(binary)
        self.bits = [(u, (e,)) for u in self.unary for e in range(n)]
        self.bits += [(b, (x, y)) for b in self.binary for x in range(n) for y in range(n)]
        self.size = 1 << len(self.bits)
        idx = np.arange(self.size, dtype=np.int64)
        self.matrix = ((idx[:, None] >> np.arange(len(self.bits))) & 1).astype(bool)
        self.tables = {}
        pos = 0
        for u in self.unary:
            self.tables[u] = self.matrix[:, pos:pos + n]
            pos += n
        for b in self.binary:
            self.tables[b] = self.matrix[:, pos:pos + n * n].reshape(self.size, n, n)
            pos += n * n

    def structure(self, i: int) -> Structure:
        row = self.matrix[i]
        u = {a: set() for a in self.unary}
        b = {f: set() for f in self.binary}
        for (name, elems), bit in zip(self.bits, row):
            if bit:
                if len(elems) == 1:
                    u[name].add(elems[0] + 1)
                else:
                    b[name].add((elems[0] + 1, elems[1] + 1))
        return Structure(self.n, u, b)

    def index(self, s: Structure) -> int:
        i = 0
        for k, (name, elems) in enumerate(self.bits):
            if len(elems) == 1:
                hit = elems[0] + 1 in s.unary.get(name, ())
            else:
                hit = (elems[0] + 1, elems[1] + 1) in s.binary.get(name, ())
            if hit:
                i |= 1 << k
        return i

    def structures(self):
        for i in range(self.size):
            yield self.structure(i)


# ---------------------------------------------------------------- RL2 in batch


def rl2_batch(f, tab, n: int) -> np.ndarray:
    """Truth of ``f`` for every row and every pair of slots.

    ``tab`` maps predicate names to arrays of shape ``(R, n)`` or
    ``(R, n, n)``.  The result has shape ``(R, n, n)`` indexed by
    ``[row, slot2, slot1]``.
    """
    rows = len(next(iter(tab.values()))) if tab else 1
    t = type(f)
    if t is PredU:
        return np.broadcast_to(tab[f.name][:, None, :], (rows, n, n))
    if t is PredB:
        return tab[f.name]
    if t is RId:
        return np.broadcast_to(np.eye(n, dtype=bool)[None], (rows, n, n))
    if t is RConst:
        return np.full((rows, n, n), f.value)
    if t is RAnd:
        return rl2_batch(f.left, tab, n) & rl2_batch(f.right, tab, n)
    if t is ROr:
        return rl2_batch(f.left, tab, n) | rl2_batch(f.right, tab, n)
    if t is RNot:
        return ~rl2_batch(f.arg, tab, n)
    if t is RTilde:
        return rl2_batch(f.arg, tab, n).transpose(0, 2, 1)
    if t is RPrime:
        v = rl2_batch(f.arg, tab, n)
        d = v[:, np.arange(n), np.arange(n)]
        return np.broadcast_to(d[:, :, None], (rows, n, n))
    if t is RCard:
        v = rl2_batch(f.arg, tab, n)
        c = v.sum(axis=2) >= f.k
        return np.broadcast_to(c[:, None, :], (rows, n, n))
    raise TypeError(f"not RL2: {f!r}")


# ---------------------------------------------------------------- FO in batch


def fo_batch(f, tab, n: int, rows: int, axes: dict) -> np.ndarray:
    """Truth of an FO formula for every row and every value of the
    variables in ``axes`` (name -> axis number, counted after the row axis)."""
    shape = (rows,) + (n,) * len(axes)
    t = type(f)
    if t is fo.FConst:
        return np.full(shape, f.value)
    if t is fo.FAnd:
        return fo_batch(f.left, tab, n, rows, axes) & fo_batch(f.right, tab, n, rows, axes)
    if t is fo.FOr:
        return fo_batch(f.left, tab, n, rows, axes) | fo_batch(f.right, tab, n, rows, axes)
    if t is fo.FNot:
        return ~fo_batch(f.arg, tab, n, rows, axes)
    if t is fo.AtomU:
        return _place(tab[f.pred], [f.var], axes, shape)
    if t is fo.AtomB:
        return _place(tab[f.pred], [f.left, f.right], axes, shape)
    if t is fo.Eq:
        eye = np.broadcast_to(np.eye(n, dtype=bool)[None], (rows, n, n))
        return _place(eye, [f.left, f.right], axes, shape)
    if t is fo.ExistsGeq:
        inner = dict(axes)
        inner[f.var] = len(axes) if f.var not in axes else axes[f.var]
        if f.var in axes:
            # rebind an outer variable: evaluate with the axis reused
            body = fo_batch(f.body, tab, n, rows, axes)
            c = body.sum(axis=1 + axes[f.var], keepdims=True) >= f.k
            return np.broadcast_to(c, shape)
        body = fo_batch(f.body, tab, n, rows, inner)
        return body.sum(axis=1 + inner[f.var]) >= f.k
    raise TypeError(f"not FO: {f!r}")


def _place(arr, vars_, axes, shape):
    """Arrange an atom's table ``(R, n[, n])`` along the axes of its variables."""
    if len(vars_) == 2 and vars_[0] == vars_[1]:
        n = arr.shape[1]
        arr = arr[:, np.arange(n), np.arange(n)]
        vars_ = vars_[:1]
    order = sorted(range(len(vars_)), key=lambda i: axes[vars_[i]])
    arr = arr.transpose([0] + [1 + i for i in order])
    target = [1] * len(shape)
    target[0] = shape[0]
    for i in order:
        target[1 + axes[vars_[i]]] = shape[1 + axes[vars_[i]]]
    return np.broadcast_to(arr.reshape(target), shape)


def fo_sat_bruteforce(f, n: int, unary, binary) -> bool:
    """Is there an interpretation of size ``n`` and values of the free
    variables making ``f`` true?"""
    fvs = sorted(fo.free_vars(f))
    if n == 0:
        if fvs:
            return False
        s = Structure(0, {u: () for u in unary}, {b: () for b in binary})
        return fo.eval_fo(f, s, {})
    space = Space(n, unary, binary)
    axes = {v: i for i, v in enumerate(fvs)}
    v = fo_batch(f, space.tables, n, space.size, axes)
    return bool(v.any())


def rl2_sat_bruteforce(f, n: int, unary, binary) -> bool:
    if n == 0:
        return False
    space = Space(n, unary, binary)
    return bool(rl2_batch(f, space.tables, n).any())


def all_assignments(vars_, n):
    for vals in itertools.product(range(1, n + 1), repeat=len(vars_)):
        yield dict(zip(vars_, vals))


# ---------------------------------------------------------------- transitions


def _rl2_names(f, out=None):
    out = set() if out is None else out
    if isinstance(f, (PredU, PredB)):
        out.add(f.name)
    for c in f.children():
        _rl2_names(c, out)
    return out


def _tag(name):
    return int(name.rsplit("@", 1)[1]) if "@" in name else None


def _conjuncts(f):
    if isinstance(f, RAnd):
        return _conjuncts(f.left) + _conjuncts(f.right)
    if isinstance(f, ROr):
        # a | (b & c)  ==  (a | b) & (a | c), when one side is a single conjunct
        left, right = _conjuncts(f.left), _conjuncts(f.right)
        if len(left) == 1:
            return [ROr(left[0], r) for r in right]
        if len(right) == 1:
            return [ROr(l, right[0]) for l in left]
    return [f]


def _encode(rows, S):
    code = np.zeros(len(rows), dtype=np.int64)
    for i in range(rows.shape[1]):
        code = code * S + rows[:, i]
    return code


def _decode(code, S, width):
    cols = []
    for _ in range(width):
        cols.append(code % S)
        code = code // S
    return np.stack(cols[::-1], axis=1) if cols else np.zeros((len(code), 0), dtype=np.int64)


def _unique_rows(rows, S):
    return _decode(np.unique(_encode(rows, S)), S, rows.shape[1])


def _disjuncts(f):
    if isinstance(f, ROr):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def _tags(f):
    return frozenset(_tag(x) for x in _rl2_names(f))


def denotation(f, space: Space, pre=None, chunk: int = 1 << 18):
    """Pairs ``(pre, post)`` of state indices satisfying a closed transition
    formula.  Intermediate versions are existentially quantified: tags are
    joined one at a time and projected away once no pending conjunct
    mentions them.  Disjuncts are evaluated over their own tags only."""
    S = space.size
    pre = np.arange(S) if pre is None else np.asarray(pre, dtype=np.int64)
    pending = [(c, _tags(c)) for c in _conjuncts(f)]
    todo = set().union(*(t for _, t in pending)) | {None}
    todo.discard(0)
    cols = [0]
    rows = pre[:, None]

    def evaluate(conj, assign, count):
        mask = np.ones(count, dtype=bool)
        for c in conj:
            tab = {}
            for name in _rl2_names(c):
                tab[name] = space.tables[name.rsplit("@", 1)[0]][assign[_tag(name)]]
            mask &= rl2_batch(c, tab, space.n)[:, 0, 0]
        return mask

    def factor(parts, t, rows, cols):
        """Truth table of a disjunction over unique values of its tags
        (other than ``t``), with the per-row lookup index."""
        deps = sorted(set().union(*(_tags(p) for p in parts)) - {t}, key=str)
        width = S if any(t in _tags(p) for p in parts) else 1
        codes = _encode(rows[:, [cols.index(d) for d in deps]], S)
        ucodes, inv = np.unique(codes, return_inverse=True)
        uniq = _decode(ucodes, S, len(deps))
        table = np.empty((len(uniq), width), dtype=bool)
        g = parts[0]
        for p in parts[1:]:
            g = ROr(g, p)
        per = max(1, chunk // width)
        for lo in range(0, len(uniq), per):
            u = uniq[lo:lo + per]
            assign = {d: np.repeat(u[:, i], width) for i, d in enumerate(deps)}
            if width > 1:
                assign[t] = np.tile(np.arange(S), len(u))
            table[lo:lo + len(u)] = evaluate([g], assign, len(u) * width).reshape(len(u), width)
        return table, inv.reshape(-1)

    def mask_chunks(conj, t, rows, cols):
        """Truth of all ready conjuncts for each row and each value of the
        new tag ``t`` (``t=0`` adds no column), yielded in row chunks."""
        width = 1 if t == 0 else S
        t = "new" if t == 0 else t
        tables = []
        for c in conj:
            groups: dict = {}
            for d in _disjuncts(c):
                groups.setdefault(_tags(d) - {t}, []).append(d)
            tables.append([factor(ps, t, rows, cols) for ps in groups.values()])
        per = max(1, chunk // width)
        for lo in range(0, len(rows), per):
            hi = min(lo + per, len(rows))
            out = np.ones((hi - lo, width), dtype=bool)
            for fs in tables:
                m = np.zeros((hi - lo, width), dtype=bool)
                for table, inv in fs:
                    m |= table[inv[lo:hi]]
                out &= m
            yield lo, hi, out

    def masks(conj, t, rows, cols):
        return np.vstack([m for _, _, m in mask_chunks(conj, t, rows, cols)])

    def step(t):
        nonlocal rows, cols, pending
        assigned = set(cols) | ({t} if t != 0 else set())
        conj = [c for c, ts in pending if ts <= assigned]
        pending = [(c, ts) for c, ts in pending if not ts <= assigned]
        deps = sorted({x for c in conj for x in _tags(c)} - {t}, key=str)
        need = {0, None} | {x for _, ts in pending for x in ts}
        newcols = cols + ([t] if t != 0 else [])
        keep = [i for i, c in enumerate(newcols) if c in need]
        if t != 0 and len(cols) == 2 and deps == [cols[1]] and [newcols[i] for i in keep] == [0, t]:
            # relational composition pre -> d -> t as a matrix product
            R = np.zeros((S, S), dtype=np.float32)
            R[rows[:, 0], rows[:, 1]] = 1
            every = np.stack([np.zeros(S, dtype=np.int64), np.arange(S)], axis=1)
            full = masks(conj, t, every, cols).astype(np.float32)
            cols = [0, t]
            rows = np.argwhere(R @ full > 0).astype(np.int64)
            return
        if t != 0 and [newcols[i] for i in keep] == [0, t]:
            # only (pre, t) survives: or-reduce each chunk per pre-state
            res = np.zeros((S, S), dtype=bool)
            for lo, hi, m in mask_chunks(conj, t, rows, cols):
                p = rows[lo:hi, 0]
                starts = np.flatnonzero(np.r_[True, p[1:] != p[:-1]])
                np.logical_or.at(res, p[starts], np.logical_or.reduceat(m, starts, axis=0))
            cols = [0, t]
            rows = np.argwhere(res).astype(np.int64)
            return
        M = masks(conj, t, rows, cols)
        out = []
        per = max(1, chunk // M.shape[1])
        for lo in range(0, len(rows), per):
            r, s = np.nonzero(M[lo:lo + per])
            block = rows[lo:lo + per][r]
            if t != 0:
                block = np.hstack([block, s[:, None]])
            out.append(_unique_rows(block[:, keep], S))
        cols = [newcols[i] for i in keep]
        rows = _unique_rows(np.vstack(out), S) if out else np.zeros((0, len(cols)), dtype=np.int64)

    step(0)
    while todo:
        def score(t):
            return sum(1 for _, ts in pending if ts <= set(cols) | {t})
        ints = sorted((t for t in todo if t is not None), key=lambda t: -score(t))
        if ints and score(ints[0]) > 0:
            t = ints[0]
        elif None in todo and (score(None) > 0 or not ints):
            t = None
        else:
            t = ints[0]
        todo.discard(t)
        step(t)
    i0, i1 = cols.index(0), cols.index(None)
    return set(zip(rows[:, i0].tolist(), rows[:, i1].tolist()))


def pair_relation(f, space: Space, fixed: dict, chunk: int = 1 << 16) -> np.ndarray:
    """Boolean matrix ``R[i, j]``: ``f`` holds with version 0 read from state
    ``i``, the untagged version from state ``j`` and every tag in ``fixed``
    from the given state."""
    S = space.size
    names = _rl2_names(f)
    R = np.zeros((S, S), dtype=bool)
    per = max(1, chunk // S)
    for lo in range(0, S, per):
        hi = min(lo + per, S)
        i = np.repeat(np.arange(lo, hi), S)
        j = np.tile(np.arange(S), hi - lo)
        assign = {0: i, None: j}
        for t, st in fixed.items():
            assign[t] = np.full(len(i), st)
        tab = {name: space.tables[name.rsplit("@", 1)[0]][assign[_tag(name)]] for name in names}
        R[lo:hi] = rl2_batch(f, tab, space.n)[:, 0, 0].reshape(hi - lo, S)
    return R


# ---------------------------------------------------------------- interpreter

from rolelogic.core import eval_formula, free_names  # noqa: E402
from rolelogic.formula import (  # noqa: E402
    And, DBLambda, Exists, Formula, Iff, Implies, Not, Or, Star, Var, walk,
)
from rolelogic.structure import Env  # noqa: E402
from rolelogic import verify as V  # noqa: E402


class Interpreter:
    """Relational semantics of statements computed state by state.

    States are indices into ``space``, whose unary vocabulary includes
    ``error``.  Formulas are evaluated with the general evaluator on the
    pre-state; specification bodies on the pair of states.
    """

    def __init__(self, program, space: Space, strict_assert: bool = False):
        self.program = program
        self.vocab = program.vocab
        self.space = space
        self.strict = strict_assert
        self._states = [space.structure(i) for i in range(space.size)]
        self._memo = {}
        self._leaf = {}
        self.error_states = frozenset(
            i for i, s in enumerate(self._states) if s.unary["error"])

    def state(self, i: int, bind=()):
        s = self._states[i]
        if not bind:
            return s
        u = dict(s.unary)
        u.update(bind)
        return V.Structure(s.size, u, s.binary)

    def holds(self, f: Formula, i: int, bind=(), stack=()):
        return bool(eval_formula(f, self.state(i, bind), Env(tuple(stack))))

    def unary_set(self, f: Formula, i: int, bind=()):
        return frozenset(o for o in range(1, self.space.n + 1) if self.holds(f, i, bind, (o,)))

    def rel(self, s, i: int, bind=()) -> frozenset:
        key = (s, i, bind)
        if key not in self._memo:
            self._memo[key] = self._rel(s, i, bind)
        return self._memo[key]

    def _with(self, i, unary=None, binary=None):
        s = self._states[i]
        u = dict(s.unary)
        b = dict(s.binary)
        u.update(unary or {})
        b.update(binary or {})
        return self.space.index(V.Structure(s.size, u, b))

    def _rel(self, s, i, bind):
        n = self.space.n
        elems = range(1, n + 1)
        if isinstance(s, V.AssignU):
            return frozenset({self._with(i, unary={s.name: self.unary_set(s.value, i, bind)})})
        if isinstance(s, (V.AssignF, V.AssignFInv)):
            src = self.unary_set(s.src, i, bind)
            old = self._states[i].binary[s.field]
            new = set()
            for a in elems:
                for b in elems:
                    x, t = (a, b) if isinstance(s, V.AssignF) else (b, a)
                    if x in src:
                        stack = (t, x) if isinstance(s, V.AssignF) else (a, b)
                        if self.holds(s.value, i, bind, stack):
                            new.add((a, b))
                    elif (a, b) in old:
                        new.add((a, b))
            return frozenset({self._with(i, binary={s.field: new})})
        if isinstance(s, V.Assume):
            return frozenset({i}) if self.holds(s.cond, i, bind) else frozenset()
        if isinstance(s, V.Assert):
            if self.holds(s.cond, i, bind):
                return frozenset({i})
            return self.error_states if self.strict else frozenset(range(self.space.size))
        if isinstance(s, V.Choice):
            return self.rel(s.left, i, bind) | self.rel(s.right, i, bind)
        if isinstance(s, V.Conj):
            return self.rel(s.left, i, bind) & self.rel(s.right, i, bind)
        if isinstance(s, V.Seq):
            out = set()
            for m in self.rel(s.left, i, bind):
                if m in self.error_states:
                    return frozenset(range(self.space.size))
                out |= self.rel(s.right, m, bind)
            return frozenset(out)
        if isinstance(s, V.Call):
            proc = self.program.procedures[s.name]
            inner = tuple(sorted((p, self.unary_set(a, i, bind))
                                 for p, a in zip(proc.params, s.args)))
            return self.rel(proc.body, i, inner)
        if isinstance(s, V.Spec):
            return frozenset(j for j in range(self.space.size)
                             if self.spec_holds(s.body, i, j, bind))
        raise TypeError(s)

    def modify(self, items, i: int, bind=()) -> frozenset:
        """Closure of the elementary changes allowed by ``items``."""
        key = ("modify", tuple(items), i, bind)
        if key in self._memo:
            return self._memo[key]
        n = self.space.n
        elems = range(1, n + 1)
        bitpos = {(name, tuple(e + 1 for e in el)): k for k, (name, el) in enumerate(self.space.bits)}
        remove, add = 0, 0
        for it in items:
            if isinstance(it, V.UnaryMod):
                for o in elems:
                    remove |= 1 << bitpos[(it.name, (o,))]
                    if self.holds(it.value, i, bind, (o,)):
                        add |= 1 << bitpos[(it.name, (o,))]
            else:
                fwd = isinstance(it, V.FieldMod)
                for x in self.unary_set(it.src, i, bind):
                    for t in elems:
                        pair = (x, t) if fwd else (t, x)
                        remove |= 1 << bitpos[(it.field, pair)]
                        stack = (t, x) if fwd else pair
                        if self.holds(it.value, i, bind, stack):
                            add |= 1 << bitpos[(it.field, pair)]
        seen = {i}
        frontier = [i]
        nbits = len(self.space.bits)
        while frontier:
            cur = frontier.pop()
            for k in range(nbits):
                m = 1 << k
                nxt = None
                if cur & m and remove & m:
                    nxt = cur & ~m
                elif not cur & m and add & m:
                    nxt = cur | m
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        self._memo[key] = frozenset(seen)
        return self._memo[key]

    # specification bodies

    def spec_holds(self, f: Formula, i: int, j: int, bind=()) -> bool:
        if isinstance(f, And):
            return self.spec_holds(f.left, i, j, bind) and self.spec_holds(f.right, i, j, bind)
        if isinstance(f, Or):
            return self.spec_holds(f.left, i, j, bind) or self.spec_holds(f.right, i, j, bind)
        if isinstance(f, Not):
            return not self.spec_holds(f.arg, i, j, bind)
        if isinstance(f, Implies):
            return not self.spec_holds(f.left, i, j, bind) or self.spec_holds(f.right, i, j, bind)
        if isinstance(f, Iff):
            return self.spec_holds(f.left, i, j, bind) == self.spec_holds(f.right, i, j, bind)
        if isinstance(f, V.StmtAtom):
            return j in self.rel(f.stmt, i, bind)
        if isinstance(f, V.ModifyAtom):
            return j in self.modify(f.items, i, bind)
        if isinstance(f, V.SkipAtom):
            return i == j
        return self._leaf_holds(f, i, j, bind)

    def _leaf_holds(self, f, i, j, bind):
        if f not in self._leaf:
            g = self._tag_old(f)
            self._leaf[f] = (g, sorted(free_names(g)))
        g, names = self._leaf[f]
        pre, post = self._states[i], self._states[j]
        b = dict(bind)
        key = [f]
        for name in names:
            base = name[:-2] if name.endswith("@0") else name
            src = pre if name.endswith("@0") else post
            if name in b:
                key.append(b[name])
            elif base in src.unary:
                key.append(src.unary[base])
            else:
                key.append(src.binary[base])
        key = tuple(key)
        if key not in self._memo:
            s = V.combine(pre, post, self.vocab)
            s = V.Structure(s.size, {**s.unary, **b}, s.binary)
            self._memo[key] = bool(eval_formula(g, s, Env(())))
        return self._memo[key]

    def _tag_old(self, f):
        if isinstance(f, V.Old):
            return self._rename0(self._tag_old(f.arg))
        return f.map_children(self._tag_old)

    def _rename0(self, f):
        if isinstance(f, Var) and "@" not in f.name and self.vocab.arity(f.name) is not None:
            return Var(f.name + "@0")
        return f.map_children(self._rename0)


def lambdas_placed(g) -> bool:
    """Every lambda sits directly under an Exists or a Star."""
    for node in walk(g):
        for c in node.children():
            if isinstance(c, DBLambda) or type(c).__name__ == "NamedLambda":
                if not isinstance(node, (Exists, Star)):
                    return False
    return not isinstance(g, DBLambda)
