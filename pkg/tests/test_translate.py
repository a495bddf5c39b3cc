import dataclasses
import itertools

import pytest

from rolelogic import fo, translate as T
from rolelogic.errors import AlternationViolated, TooManyFreeVars
from rolelogic.frontend import parse_fo, parse_i2
from rolelogic.rl2 import PredB, PredU, RCard, RConst, RPrime, RTilde, eval_rl2
from rolelogic.solver import check_sat_bounded
from rolelogic.structure import PairEnv, all_structures

import gen


def assignments(vars_, n):
    for vals in itertools.product(range(1, n + 1), repeat=len(vars_)):
        yield dict(zip(vars_, vals))


def fo_equal(a, b, structures, ren=None):
    """Same truth value under every assignment of the free variables;
    ``ren`` maps free variables of ``a`` to those of ``b``."""
    ren = ren or {}
    fv = sorted(fo.free_vars(a) | {k for k in ren})
    for s in structures:
        for asg in assignments(fv, s.size):
            other = {ren.get(k, k): v for k, v in asg.items()}
            other.update({v: asg[v] for v in fo.free_vars(b) if v in asg and v not in other})
            if fo.eval_fo(a, s, asg) != fo.eval_fo(b, s, other):
                return False
    return True


def swap_xy(f):
    """Exchange the names x and y throughout."""
    if isinstance(f, str):
        return {"x": "y", "y": "x"}.get(f, f)
    if dataclasses.is_dataclass(f):
        return dataclasses.replace(f, **{k.name: swap_xy(getattr(f, k.name)) for k in dataclasses.fields(f)})
    return f


def small_structures(rng, count=25, unary=gen.UNARY, binary=gen.BINARY):
    return [gen.structure(rng, 3, unary, binary, nmin=1) for _ in range(count)]


def test_rl2_to_d2_rules():
    assert T.rl2_to_d2(PredU("A")) == fo.AtomU("A", "y1")
    assert T.rl2_to_d2(RTilde(PredB("f"))) == fo.AtomB("f", "y1", "y2")
    g = T.rl2_to_d2(RPrime(RCard(1, PredB("f"))))
    assert g == fo.ExistsGeq(1, "y3", fo.AtomB("f", "y2", "y3"))


def test_rl2_to_d2_random(rng):
    for _ in range(200):
        x = gen.rl2(rng, 4)
        d = T.rl2_to_d2(x)
        assert fo.check_d2(d)
        assert fo.free_vars(d) <= {"y1", "y2"}
        s = gen.structure(rng, 3, nmin=1)
        for a, b in itertools.product(s.universe, repeat=2):
            assert eval_rl2(x, s, PairEnv(a, b)) == fo.eval_fo(d, s, {"y1": a, "y2": b})


def test_counting_condition(rng):
    assert T.ensure_counting_condition(parse_fo("exge 2 x. B(y)")) == parse_fo("B(y) & exge 2 x. true")
    same = parse_fo("ex x. A(x)")
    assert T.ensure_counting_condition(same) == same
    nested = parse_fo("exge 2 x. exge 1 z. B(y)")
    out = T.ensure_counting_condition(nested)
    assert fo_equal(nested, out, small_structures(rng, unary=("B",), binary=()))


def test_d2_to_c2_example3(rng):
    src = parse_fo("all u. A(u) => (all v. f(u,v) => B(v)) & (all w. g(u,w) => D(w))")
    out = T.d2_to_c2(src)
    want = parse_fo("all x. A(x) => (all y. f(x,y) => B(y)) & (all y. g(x,y) => D(y))")
    assert out in (want, swap_xy(want))
    structures = list(itertools.islice(all_structures(2, ["A", "B", "D"], ["f", "g"]), 0, 1 << 14, 97))
    assert fo_equal(src, out, structures)


def test_d2_to_c2_random(rng):
    for _ in range(200):
        x = gen.d2(rng, 4)
        x = T.ensure_counting_condition(x)
        c, ren = T.d2_to_c2(x, with_renaming=True)
        assert fo.check_c2(c)
        assert fo.fo_size(c) == fo.fo_size(x)
        assert set(ren) == set(fo.free_vars(x))
        assert fo_equal(x, c, small_structures(rng, 5, ("A", "B"), ("f",)), ren)


def test_d2_to_c2_rejects_three_free():
    with pytest.raises(TooManyFreeVars):
        T.d2_to_c2(parse_fo("A(x) & B(y) & D(z)"))


def test_alternate_examples(rng):
    src = parse_fo("exge 1 y. exge 1 x. (exge 1 x. P(x,y)) & Q(x,y)")
    out = T.alternate(src)
    assert fo.is_alternating(out)
    structures = list(itertools.islice(all_structures(2, [], ["P", "Q"]), 0, 256))
    assert fo_equal(src, out, structures)
    good = parse_fo("ex y. A(y) & ex x. f(x,y)")
    assert T.alternate(good) == good


def test_alternate_random(rng):
    done = 0
    while done < 150:
        x = gen.c2(rng, 4)
        try:
            out = T.alternate(x, budget=20_000)
        except Exception:
            continue
        done += 1
        assert fo.is_alternating(out)
        assert fo.check_c2(out)
        assert fo_equal(x, out, small_structures(rng, 4))


def test_alternate_satpreserving():
    src = parse_fo("exge 1 y. exge 1 x. (exge 1 x. P(x,y)) & Q(x,y)")
    out, defs = T.alternate_satpreserving(src)
    assert len(defs) == 1
    assert fo.is_alternating(out)
    for n in range(1, 5):
        a = check_sat_bounded(out, n, n_min=n).sat
        b = check_sat_bounded(T.alternate(src), n, n_min=n).sat
        assert a == b
    plain = parse_fo("ex y. A(y) & ex x. f(x,y)")
    assert T.alternate_satpreserving(plain) == (plain, [])
    two = parse_fo("(ex x. ex x. f(x,y)) & (ex y. ex y. g(x,y))")
    out2, defs2 = T.alternate_satpreserving(two)
    assert len(defs2) == 2
    names = sorted(fo.predicates(out2)[0] - fo.predicates(two)[0])
    assert names == ["P1", "P2"]


def test_c2_to_i2_examples():
    assert T.c2_to_i2(parse_fo("ex y. ex x. f(x,y)")) == parse_i2("card(>=1, card(>=1, f(#1,#2)))")
    assert T.c2_to_i2(parse_fo("A(x)"), {"x": 1}) == fo.IAtomU("A", 1)
    with pytest.raises(AlternationViolated):
        T.c2_to_i2(parse_fo("ex x. B(y) & ex x. f(x,y)"), {"y": 2})


def test_i2_to_c2_examples():
    assert T.i2_to_c2(parse_i2("card(>=1, A(#1))"), {1: "x", 2: "y"}) == parse_fo("ex y. A(y)")
    assert T.i2_to_c2(parse_i2("#1 = #2"), {1: "x", 2: "y"}) == parse_fo("x = y")


def test_i2_round_trip(rng):
    for _ in range(200):
        x = gen.i2(rng, 4)
        c = T.i2_to_c2(x)
        back = T.c2_to_i2(c, {"x": 1, "y": 2})
        s = gen.structure(rng, 3, nmin=1)
        for a, b in itertools.product(s.universe, repeat=2):
            e = PairEnv(a, b)
            v = fo.eval_i2(x, s, e)
            assert fo.eval_fo(c, s, {"x": a, "y": b}) == v
            assert fo.eval_i2(back, s, e) == v


def test_i2_to_rl2_rules():
    f = PredB("f")
    assert T.i2_to_rl2(fo.IAtomB("f", 1, 2)) == RTilde(f)
    assert T.i2_to_rl2(fo.IAtomB("f", 2, 1)) == f
    assert T.i2_to_rl2(fo.IAtomB("f", 2, 2)) == RPrime(f)
    assert T.i2_to_rl2(fo.IAtomB("f", 1, 1)) == RTilde(RPrime(f))
    assert T.i2_to_rl2(fo.IAtomU("A", 2)) == RPrime(PredU("A"))
    assert T.i2_to_rl2(fo.IEq(2, 2)) == RConst(True)


def _has_index(x):
    return any(_has_index(c) for c in x.children()) or type(x).__name__ == "Index"


def test_i2_to_rl2_random(rng):
    for _ in range(200):
        x = gen.i2(rng, 4)
        r = T.i2_to_rl2(x)
        assert not _has_index(r)
        s = gen.structure(rng, 3, nmin=1)
        for a, b in itertools.product(s.universe, repeat=2):
            e = PairEnv(a, b)
            assert eval_rl2(r, s, e) == fo.eval_i2(x, s, e)


def test_four_corner_small(rng):
    for _ in range(60):
        x = gen.rl2(rng, 3)
        y = T.four_corner(x)
        s = gen.structure(rng, 3, nmin=1)
        for a, b in itertools.product(s.universe, repeat=2):
            assert eval_rl2(x, s, PairEnv(a, b)) == eval_rl2(y, s, PairEnv(a, b))
