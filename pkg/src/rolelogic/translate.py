"""Translations between RL2, D2, C2 and I2."""

from __future__ import annotations

import itertools

from .errors import AlternationViolated, TooManyFreeVars, TranslationBudgetExceeded
from .fo import (
    BOTTOM, TOP, AtomB, AtomU, Card, Eq, ExistsGeq, FAnd, FConst, FNot, FO, FOr,
    IAtomB, IAtomU, IEq, all_vars, capturing, check_d2, f_and, f_forall, f_iff,
    f_or, fo_size, free_vars, predicates, rebuild, rename_free,
)
from .rl2 import (
    RL2, PredB, PredU, RAnd, RCard, RConst, RId, RNot, ROr, RPrime, RTilde,
)

OTHER = {"x": "y", "y": "x"}


# ---------------------------------------------------------------- RL2 -> D2


def rl2_to_d2(f: RL2, counter: int = 2, slot1: str = "y1", slot2: str = "y2") -> FO:
    """Name the two slots ``slot1``/``slot2``; each counting quantifier binds
    the next fresh ``y<n>``."""
    out = _rd(f, counter, slot1, slot2)
    ok = check_d2(out)
    assert ok, f"RL2 translation left D2 at {ok.path}: {ok.reason}"
    return out


def _rd(f: RL2, n: int, e1: str, e2: str) -> FO:
    t = type(f)
    if t is PredU:
        return AtomU(f.name, e1)
    if t is PredB:
        return AtomB(f.name, e2, e1)
    if t is RId:
        return Eq(e2, e1)
    if t is RConst:
        return FConst(f.value)
    if t is RAnd:
        return FAnd(_rd(f.left, n, e1, e2), _rd(f.right, n, e1, e2))
    if t is ROr:
        return FOr(_rd(f.left, n, e1, e2), _rd(f.right, n, e1, e2))
    if t is RNot:
        return FNot(_rd(f.arg, n, e1, e2))
    if t is RTilde:
        return _rd(f.arg, n, e2, e1)
    if t is RPrime:
        return _rd(f.arg, n, e2, e2)
    if t is RCard:
        v = f"y{n + 1}"
        return ExistsGeq(f.k, v, _rd(f.arg, n + 1, v, e1))
    raise TypeError(f"not an RL2 formula: {f!r}")


# ---------------------------------------------------------------- D2 -> C2


def ensure_counting_condition(f: FO) -> FO:
    """Make every quantifier bind a variable free in its body, or have body true."""
    if isinstance(f, ExistsGeq):
        body = ensure_counting_condition(f.body)
        if f.k == 0:
            return TOP
        if f.var in free_vars(body) or body == TOP:
            return ExistsGeq(f.k, f.var, body)
        return FAnd(body, ExistsGeq(f.k, f.var, TOP))
    return rebuild(f, (ensure_counting_condition(c) for c in f.children()))


def swap_xy(f: FO) -> FO:
    """Exchange the bound variables ``x`` and ``y``; other names are fixed."""
    s = lambda v: OTHER.get(v, v)
    if isinstance(f, AtomU):
        return AtomU(f.pred, s(f.var))
    if isinstance(f, AtomB):
        return AtomB(f.pred, s(f.left), s(f.right))
    if isinstance(f, Eq):
        return Eq(s(f.left), s(f.right))
    if isinstance(f, ExistsGeq):
        return ExistsGeq(f.k, s(f.var), swap_xy(f.body))
    return rebuild(f, (swap_xy(c) for c in f.children()))


def _alpha(f: FO, names: dict, fresh) -> FO:
    if isinstance(f, AtomU):
        return AtomU(f.pred, names[f.var])
    if isinstance(f, AtomB):
        return AtomB(f.pred, names[f.left], names[f.right])
    if isinstance(f, Eq):
        return Eq(names[f.left], names[f.right])
    if isinstance(f, ExistsGeq):
        v = next(fresh)
        inner = dict(names)
        inner[f.var] = v
        return ExistsGeq(f.k, v, _alpha(f.body, inner, fresh))
    return rebuild(f, (_alpha(c, names, fresh) for c in f.children()))


def _orientations(f: FO, u: str | None, v: str | None) -> set[int]:
    cu = capturing(u, f) if u else frozenset()
    cv = capturing(v, f) if v else frozenset()
    out = set()
    if cu <= {"x"} and cv <= {"y"}:
        out.add(1)
    if cu <= {"y"} and cv <= {"x"}:
        out.add(2)
    return out


def _pair(fv) -> tuple[str | None, str | None]:
    fv = sorted(fv)
    return (fv[0] if fv else None, fv[1] if len(fv) > 1 else None)


def _dc(f: FO) -> FO:
    if isinstance(f, (AtomU, AtomB, Eq, FConst)):
        return f
    if isinstance(f, FNot):
        return FNot(_dc(f.arg))
    if isinstance(f, (FAnd, FOr)):
        a, b = _dc(f.left), _dc(f.right)
        u, v = _pair(free_vars(f))
        if not (_orientations(a, u, v) & _orientations(b, u, v)):
            b = swap_xy(b)
        return type(f)(a, b)
    if isinstance(f, ExistsGeq):
        body = _dc(f.body)
        others = free_vars(f.body) - {f.var}
        u = next(iter(others)) if others else None
        cu = capturing(u, body) if u else frozenset()
        cw = capturing(f.var, body)
        if cu <= {"x"} and cw <= {"y"}:
            return ExistsGeq(f.k, "x", rename_free(body, {f.var: "x"}))
        if cu <= {"y"} and cw <= {"x"}:
            return ExistsGeq(f.k, "y", rename_free(body, {f.var: "y"}))
        raise TooManyFreeVars(f"no two-variable renaming for the body of {f.var}")
    raise TypeError(f"not a first-order formula: {f!r}")


def d2_to_c2(f: FO, with_renaming: bool = False):
    """Rename bound variables so that only ``x`` and ``y`` are used.

    Free variables are renamed too; ``with_renaming`` also returns the map
    from old free-variable names to ``x``/``y``.
    """
    fv = sorted(free_vars(f))
    if len(fv) > 2:
        raise TooManyFreeVars(f"{len(fv)} free variables: {fv}")
    bad = check_d2(f)
    if not bad:
        raise TooManyFreeVars(f"not in D2 at {bad.path}: {bad.reason}")
    taken = all_vars(f)
    fresh_free = {}
    for i, v in enumerate(fv):
        fresh_free[v] = _fresh(f"_u{i}", taken)
    counter = itertools.count()
    fresh = (_fresh(f"_b{next(counter)}", taken) for _ in itertools.count())
    g = _dc(_alpha(f, fresh_free, fresh))

    u, v = _pair(fresh_free.values())
    orient = sorted(_orientations(g, u, v))
    inv = {n: o for o, n in fresh_free.items()}
    if not orient:
        raise TooManyFreeVars("free variables cannot be placed on x and y")
    if len(orient) == 2:
        # free choice: keep the user's own x/y names where possible
        first = inv.get(u)
        orient = [2 if first != "y" else 1]
    final = {}
    if u:
        final[u] = "y" if orient[0] == 1 else "x"
    if v:
        final[v] = "x" if orient[0] == 1 else "y"
    g = rename_free(g, final)
    ren = {inv[k]: val for k, val in final.items()}
    return (g, ren) if with_renaming else g


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


# ---------------------------------------------------------------- alternation


def _prop_atoms(f: FO, out: list):
    """Maximal non-connective subformulas, left to right, without repeats."""
    if isinstance(f, (FAnd, FOr, FNot)):
        for c in f.children():
            _prop_atoms(c, out)
    elif not isinstance(f, FConst) and f not in out:
        out.append(f)


def _replace_prop(f: FO, table: dict) -> FO:
    if f in table:
        return table[f]
    if isinstance(f, (FAnd, FOr, FNot)):
        return rebuild(f, (_replace_prop(c, table) for c in f.children()))
    return f


def fold(f: FO) -> FO:
    """Propagate boolean constants through connectives."""
    if isinstance(f, FNot):
        a = fold(f.arg)
        if isinstance(a, FConst):
            return FConst(not a.value)
        return FNot(a)
    if isinstance(f, (FAnd, FOr)):
        a, b = fold(f.left), fold(f.right)
        absorbing = isinstance(f, FOr)
        for x, y in ((a, b), (b, a)):
            if isinstance(x, FConst):
                return x if x.value == absorbing else y
        return type(f)(a, b)
    return f


def split_card(k: int, var: str, cubes) -> FO:
    """``exge k v (B1 | ... | Bn)`` for pairwise contradictory cubes, as the
    disjunction over ``l1 + ... + ln = k`` of ``exge li v Bi`` conjunctions."""
    cubes = list(cubes)
    terms = []
    for ls in _compositions(k, len(cubes)):
        terms.append(f_and(ExistsGeq(l, var, b) for l, b in zip(ls, cubes)))
    return f_or(terms)


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


def _literal(a: FO, value: bool) -> FO:
    return a if value else FNot(a)


def alternate(f: FO, budget: int = 100_000) -> FO:
    """Remove every ``exge k1 v B(exge k2 v G)`` with the same ``v``.

    The offending inner quantifiers are the atoms of the case split: for a
    truth assignment s to them, ``L_s`` is the cube of their literals and
    ``B_s`` the body with the atoms replaced by constants.  The ``B_s`` are
    pairwise disjoint, so splitting the count gives
    ``OR over l_s summing to k of AND (L_s & exge l_s v B_s)``; ``L_s`` does not
    mention ``v`` and moves out of the quantifier.  Terms that give a
    positive count to two different cubes are contradictory and dropped, and
    ``exge 0`` is true.
    """
    return _Alternator(budget).run(f)


class _Alternator:
    def __init__(self, budget: int):
        self.budget = budget

    def run(self, f: FO) -> FO:
        out = self.go(f)
        return out

    def go(self, f: FO) -> FO:
        if isinstance(f, ExistsGeq):
            body = self.go(f.body)
            atoms: list = []
            _prop_atoms(body, atoms)
            bad = [a for a in atoms if isinstance(a, ExistsGeq) and a.var == f.var]
            if not bad:
                return ExistsGeq(f.k, f.var, body)
            if f.k == 0:
                return TOP
            terms = []
            for sigma in itertools.product((True, False), repeat=len(bad)):
                table = {a: FConst(val) for a, val in zip(bad, sigma)}
                b = fold(_replace_prop(body, table))
                if b == BOTTOM:
                    continue
                cube = f_and(_literal(a, val) for a, val in zip(bad, sigma))
                terms.append(FAnd(cube, ExistsGeq(f.k, f.var, b)))
            out = f_or(terms)
            if fo_size(out) > self.budget:
                raise TranslationBudgetExceeded(
                    f"alternation produced more than {self.budget} nodes")
            return out
        kids = f.children()
        if not kids:
            return f
        return rebuild(f, (self.go(c) for c in kids))


def alternate_satpreserving(f: FO) -> tuple[FO, list[FO]]:
    """Linear-size alternation with fresh unary predicates ``P1, P2, ...``.

    Each offending ``exge k2 v G`` becomes ``P(w)`` (``w`` the other variable)
    and ``all w. P(w) <=> exge k2 v G`` is conjoined at the top.  The result
    is equisatisfiable with ``f`` over the extended vocabulary.
    """
    u, b = predicates(f)
    used = u | b
    defs: list[FO] = []
    counter = itertools.count(1)

    def fresh():
        while True:
            name = f"P{next(counter)}"
            if name not in used:
                used.add(name)
                return name

    def go(g: FO) -> FO:
        if isinstance(g, ExistsGeq):
            body = go(g.body)
            atoms: list = []
            _prop_atoms(body, atoms)
            table = {}
            for a in atoms:
                if isinstance(a, ExistsGeq) and a.var == g.var:
                    w = OTHER[g.var]
                    p = fresh()
                    table[a] = AtomU(p, w)
                    defs.append(f_forall(w, f_iff(AtomU(p, w), a)))
            if table:
                body = _replace_prop(body, table)
            return ExistsGeq(g.k, g.var, body)
        kids = g.children()
        return rebuild(g, (go(c) for c in kids)) if kids else g

    out = go(f)
    if defs:
        out = f_and([out] + defs)
    return out, defs


# ---------------------------------------------------------------- C2 <-> I2


def c2_to_i2(f: FO, env: dict | None = None) -> FO:
    """Replace ``x``/``y`` by indices; ``env`` maps the free variables to 1/2.

    A quantifier on ``v`` needs the other variable, when it occurs free in
    the body, at index 1.  Without ``env`` both placements are tried.
    """
    if env is not None:
        return _ci(f, dict(env))
    first_err = None
    for cand in ({"x": 1, "y": 2}, {"y": 1, "x": 2}):
        try:
            return _ci(f, cand)
        except AlternationViolated as ex:
            first_err = first_err or ex
    raise first_err


def _idx(env, v):
    try:
        return env[v]
    except KeyError:
        raise AlternationViolated(f"variable {v} has no index") from None


def _ci(f: FO, env: dict) -> FO:
    if isinstance(f, AtomU):
        return IAtomU(f.pred, _idx(env, f.var))
    if isinstance(f, AtomB):
        return IAtomB(f.pred, _idx(env, f.left), _idx(env, f.right))
    if isinstance(f, Eq):
        return IEq(_idx(env, f.left), _idx(env, f.right))
    if isinstance(f, ExistsGeq):
        v = f.var
        if v not in OTHER:
            raise AlternationViolated(f"bound variable {v} is neither x nor y")
        o = OTHER[v]
        if o in free_vars(f.body) and env.get(o) != 1:
            raise AlternationViolated(
                f"quantifier on {v} needs {o} at index 1 (nested quantifiers on {v}?)")
        return Card(f.k, _ci(f.body, {v: 1, o: 2}))
    if isinstance(f, (FAnd, FOr, FNot, FConst)):
        return rebuild(f, (_ci(c, env) for c in f.children()))
    raise TypeError(f"not a C2 formula: {f!r}")


def i2_to_c2(f: FO, env: dict | None = None) -> FO:
    """``env`` maps indices 1 and 2 to variable names (default ``x``, ``y``)."""
    return _ic(f, dict(env or {1: "x", 2: "y"}))


def _ic(f: FO, env: dict) -> FO:
    if isinstance(f, IAtomU):
        return AtomU(f.pred, env[f.i])
    if isinstance(f, IAtomB):
        return AtomB(f.pred, env[f.i], env[f.j])
    if isinstance(f, IEq):
        return Eq(env[f.i], env[f.j])
    if isinstance(f, Card):
        v = OTHER[env[1]]
        return ExistsGeq(f.k, v, _ic(f.body, {1: v, 2: env[1]}))
    return rebuild(f, (_ic(c, env) for c in f.children()))


# ---------------------------------------------------------------- I2 -> RL2


def i2_to_rl2(f: FO) -> RL2:
    t = type(f)
    if t is IAtomU:
        return PredU(f.pred) if f.i == 1 else RPrime(PredU(f.pred))
    if t is IAtomB:
        b = PredB(f.pred)
        return {(2, 1): b, (1, 2): RTilde(b), (2, 2): RPrime(b),
                (1, 1): RTilde(RPrime(b))}[(f.i, f.j)]
    if t is IEq:
        return RId() if f.i != f.j else RConst(True)
    if t is FConst:
        return RConst(f.value)
    if t is FAnd:
        return RAnd(i2_to_rl2(f.left), i2_to_rl2(f.right))
    if t is FOr:
        return ROr(i2_to_rl2(f.left), i2_to_rl2(f.right))
    if t is FNot:
        return RNot(i2_to_rl2(f.arg))
    if t is Card:
        return RCard(f.k, i2_to_rl2(f.body))
    raise TypeError(f"not an I2 formula: {f!r}")


def c2_to_rl2(f: FO, env: dict) -> RL2:
    """C2 to RL2 through I2, for an alternating formula with free variables
    placed by ``env``.

    I2 drops index 2 whenever it counts, so a quantified subformula whose
    free variable sits at index 2 has no I2 rendering in place.  Such a
    subformula is translated with that variable at index 1 and primed.
    """
    if isinstance(f, (FAnd, FOr, FNot, FConst)):
        kids = [c2_to_rl2(c, env) for c in f.children()]
        if isinstance(f, FConst):
            return RConst(f.value)
        if isinstance(f, FNot):
            return RNot(kids[0])
        return (RAnd if isinstance(f, FAnd) else ROr)(*kids)
    if isinstance(f, ExistsGeq):
        fv = free_vars(f)
        if fv and env.get(next(iter(fv))) == 2:
            w = next(iter(fv))
            return RPrime(i2_to_rl2(_ci(f, {w: 1})))
    return i2_to_rl2(_ci(f, env))


def four_corner(f: RL2) -> RL2:
    """RL2 -> D2 -> C2 -> (alternating) C2 -> I2 -> RL2."""
    d2 = ensure_counting_condition(rl2_to_d2(f))
    c2, ren = d2_to_c2(d2, with_renaming=True)
    alt = alternate(c2)
    env = {}
    if "y1" in ren:
        env[ren["y1"]] = 1
    if "y2" in ren:
        env[ren["y2"]] = 2
    return c2_to_rl2(alt, env)
