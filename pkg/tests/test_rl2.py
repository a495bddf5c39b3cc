import itertools

import pytest

from rolelogic import core, fo
from rolelogic.errors import NotInFragment
from rolelogic.formula import RelK, Star, TypeContext, Var
from rolelogic.frontend import parse_fo, parse_formula, parse_rl2
from rolelogic.rl2 import (
    PredB, PredU, RCard, RId, RTilde, coerce_rl2, embed, eval_rl2, is_bsac, r_image, r_wlp,
)
from rolelogic.structure import Env, PairEnv, Structure

import gen


def envs(s):
    for a, b in itertools.product(s.universe, repeat=2):
        yield PairEnv(a, b)


def test_eval_examples():
    s = Structure(2, {}, {"f": {(2, 1)}})
    assert eval_rl2(PredB("f"), s, PairEnv(1, 2))
    assert not eval_rl2(PredB("f"), s, PairEnv(2, 1))
    for n in (1, 2, 3):
        s = Structure(n, {}, {})
        assert all(eval_rl2(RCard(1, RId()), s, e) for e in envs(s))


def test_double_tilde(rng):
    for _ in range(50):
        x = gen.rl2(rng, 3)
        s = gen.structure(rng, 3, nmin=1)
        assert all(eval_rl2(RTilde(RTilde(x)), s, e) == eval_rl2(x, s, e) for e in envs(s))


def test_rl2_agrees_with_full_logic(rng):
    for _ in range(300):
        x = gen.rl2(rng, 4)
        s = gen.structure(rng, 4, nmin=1)
        g = embed(x)
        for e in envs(s):
            assert eval_rl2(x, s, e) == core.eval_formula(g, s, Env((e.slot1, e.slot2)))


def test_coerce_embed_identity(rng):
    for _ in range(300):
        x = gen.rl2(rng, 4)
        assert coerce_rl2(embed(x)) == x


def test_coerce_accepts_and_rejects():
    x = coerce_rl2(parse_formula("[[ clients <=> ~server ]]"))
    s = Structure(2, {}, {"clients": {(1, 2)}, "server": {(2, 1)}})
    assert eval_rl2(x, s, PairEnv(1, 1))
    with pytest.raises(NotInFragment):
        coerce_rl2(Star(Var("f")))
    with pytest.raises(NotInFragment):
        coerce_rl2(parse_formula("{{ A #3 }}"))


def test_sugar_shorthands(rng):
    for _ in range(100):
        s = gen.structure(rng, 3, nmin=1)
        a, r = gen.rl2(rng, 2), gen.rl2(rng, 2)
        for e in envs(s):
            wlp = eval_rl2(r_wlp(r, a), s, e)
            brute = all(not eval_rl2(r, s, PairEnv(o, e.slot1)) or eval_rl2(a, s, PairEnv(o, e.slot1))
                        for o in s.universe)
            assert wlp == brute
            image = eval_rl2(r_image(a, r), s, e)
            brute = any(eval_rl2(a, s, PairEnv(o, e.slot1)) and eval_rl2(r, s, PairEnv(e.slot1, o))
                        for o in s.universe)
            assert image == brute


def test_bsac():
    ctx = TypeContext({"A": RelK(1), "B": RelK(1), "f": RelK(2), "g": RelK(2)})
    yes = ["{A & !B}", "{{A' & B & (f | !g)}}", "!{A} & {B}"]
    no = ["card(>=2, A)", "{{A' & B}}", "[f => A' & B]"]
    for t in yes:
        assert is_bsac(parse_rl2(t, ctx=ctx)), t
    for t in no:
        assert not is_bsac(parse_rl2(t, ctx=ctx)), t


def _cards(x):
    if isinstance(x, RCard):
        yield x.k
    for c in x.children():
        yield from _cards(c)


def test_bsac_has_no_counting(rng):
    hits = 0
    for _ in range(2000):
        x = gen.rl2(rng, 3, kmax=2)
        if is_bsac(x):
            hits += 1
            assert all(k <= 1 for k in _cards(x))
    assert hits > 0


def test_fragment_checks():
    ex3 = parse_fo("all x. A(x) => (all y. f(x,y) => B(y)) & (all z. g(x,z) => D(z))")
    assert fo.check_d2(ex3)
    c = fo.check_c2(ex3)
    assert not c and c.path
    assert fo.check_c2(parse_fo("ex y. ex x. ex x. P(x,y)"))
    three = parse_fo("f(x,y) & g(y,z) & A(x)")
    assert not fo.check_d2(three)


def test_i2_checks():
    from rolelogic.frontend import parse_i2

    assert fo.check_i2(parse_i2("card(>=1, A(#1) & f(#1,#2))"))
    assert not fo.check_i2(fo.IAtomU("A", 3))


def test_first_failure_is_leftmost_innermost():
    x = fo.FAnd(fo.AtomB("f", "x", "z"), fo.AtomU("A", "w"))
    c = fo.check_c2(x)
    assert c.path == (0,)
