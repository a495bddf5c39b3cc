import pytest

from rolelogic import formula as F
from rolelogic import verify as V
from rolelogic.errors import (
    DuplicateDecl, DuplicateProc, OutOfUniverse, ParseError, RoleLogicError, UnknownClaimTarget,
)
from rolelogic.frontend import (
    parse_fo, parse_formula, parse_i2, parse_program, parse_rl2, parse_structure, pretty,
    pretty_program, pretty_structure,
)
from rolelogic.frontend.parse import parse_concept, parse_role, parse_statement
from rolelogic.structure import Structure

import gen


def test_formula_examples():
    f = parse_formula("[[ f => A' & B ]]")
    assert f == F.SquareBrace(F.SquareBrace(F.Implies(F.Var("f"), F.And(F.Prime(F.Var("A")), F.Var("B")))))
    assert parse_formula("card(>=5, clients)") == F.CardGeq(5, F.Var("clients"))
    assert parse_formula("card(<=5, clients)") == F.CardLeq(5, F.Var("clients"))


def test_empty_input():
    with pytest.raises(ParseError) as e:
        parse_formula("")
    assert (e.value.span.line, e.value.span.column) == (1, 1)
    assert e.value.expected


def test_structure_examples():
    s = parse_structure("universe 2\nunary A = {1}\nbinary f = {(1,2)}")
    assert s == Structure(2, {"A": {1}}, {"f": {(1, 2)}})
    assert parse_structure("universe 0").size == 0


@pytest.mark.parametrize("text,err,where", [
    ("universe 2\nbinary f = {(3,1)}", OutOfUniverse, (2, 14)),
    ("universe 2\nunary A = {1, 1}", DuplicateDecl, (2, 15)),
    ("universe 1\nunary A = {}\nbinary A = {}", DuplicateDecl, (3, 1)),
])
def test_structure_errors(text, err, where):
    with pytest.raises(err) as e:
        parse_structure(text)
    assert (e.value.span.line, e.value.span.column) == where


def test_program_examples():
    p = parse_program("proc skipP() = spec true\nclaim: skipP => skipP\n")
    assert list(p.procedures) == ["skipP"] and p.claims == [("skipP", "skipP")]
    st = parse_statement("A := B & C", ["A", "B", "C"])
    assert isinstance(st, V.AssignU) and st.name == "A"
    st = parse_statement("x.~f := y", ["x", "y"], ["f"])
    assert isinstance(st, V.AssignFInv) and st.field == "f"


@pytest.mark.parametrize("text,err", [
    ("proc a() = skip\nproc a() = skip", DuplicateProc),
    ("proc a() = skip\nclaim: a => b", UnknownClaimTarget),
])
def test_program_errors(text, err):
    with pytest.raises(err) as e:
        parse_program(text)
    assert e.value.span.line == 2


@pytest.mark.parametrize("text", ["A &", "card(>=, A)", "[A", "A )", "let P : rel 2 = A in", "ex x A(x)"])
def test_error_spans_inside_input(text):
    with pytest.raises(RoleLogicError) as e:
        parse_formula(text) if "ex " not in text else parse_fo(text)
    sp = e.value.span
    assert sp.line == 1 and 1 <= sp.column <= len(text) + 1


def test_pretty_examples():
    assert pretty(parse_formula("A & B => C")) == "A & B => C"
    assert pretty(parse_formula("(A => B) & C")) == "(A => B) & C"
    assert pretty(F.Index(1)) == "#1"
    f = parse_formula("[[f => A' & B]]")
    assert parse_formula(pretty(f)) == f


def test_spans_attached():
    f = parse_formula("[A]\n & {B}")
    assert f.span is not None
    assert (f.left.span.line, f.right.span.line) == (1, 2)


ROUND_TRIPS = {
    "formula": (lambda r: gen.formula(r, 4), pretty, parse_formula),
    "rl2": (lambda r: gen.rl2(r, 4), pretty, parse_rl2),
    "fo": (lambda r: gen.c2(r, 4), pretty, parse_fo),
    "i2": (lambda r: gen.i2(r, 4), pretty, parse_i2),
    "structure": (lambda r: gen.structure(r, 4), pretty_structure, parse_structure),
    "program": (gen.program, pretty_program, parse_program),
    "concept": (lambda r: gen.concept(r, 4, full=True), pretty, parse_concept),
    "role": (lambda r: gen.role(r, 3, full=True), pretty, parse_role),
}


@pytest.mark.parametrize("grammar", sorted(ROUND_TRIPS))
def test_round_trip(grammar, rng):
    make, show, read = ROUND_TRIPS[grammar]
    for _ in range(150):
        x = make(rng)
        assert read(show(x)) == x, show(x)
