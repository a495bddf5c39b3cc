import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

import rolelogic
from rolelogic import Env, eval_formula, verify as V
from rolelogic.cli import main
from rolelogic.frontend import parse_formula, parse_program, parse_structure

CORPUS = Path(rolelogic.__file__).parent / "corpus"
SCHEMA = json.loads(resources.files("rolelogic").joinpath("report_schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_valid_entailment(capsys):
    code, out, _ = run(capsys, "valid", "--bound", 4, CORPUS / "entailment.rl")
    assert code == 0 and out.strip() == "valid up to bound 4"


def test_eval_on_empty_structure(capsys, tmp_path):
    s = tmp_path / "empty.struct"
    s.write_text("universe 0\n")
    code, out, _ = run(capsys, "eval", "-e", "{Servers}", s)
    assert (code, out.strip()) == (0, "false")
    s.write_text("universe 2\nunary Servers = {2}\n")
    assert run(capsys, "eval", "-e", "{Servers}", s)[:2] == (0, "true\n")


def test_sat_and_unsat(capsys):
    code, out, _ = run(capsys, "sat", "--bound", 2, "-e", "{A} & {!A}")
    assert code == 0 and out.startswith("sat at size 2")
    code, out, _ = run(capsys, "sat", "--bound", 2, "-e", "{A} & [!A]")
    assert code == 1 and out.strip() == "unsat up to bound 2"
    code, out, _ = run(capsys, "valid", "--bound", 2, "-e", "[A => B]")
    assert code == 1 and out.startswith("counterexample at size 1")


def test_sat_model_is_struct_text(capsys):
    code, out, _ = run(capsys, "sat", "--bound", 3, "--format", "json", CORPUS / "global_invariant.rl")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Sat" and data["bound"] == 1
    s = parse_structure(data["model"])
    g = parse_formula((CORPUS / "global_invariant.rl").read_text())
    assert eval_formula(g, s.with_vocabulary(("Clients", "WaitingClients", "AssignedClients"),
                                             ("server", "clients")), Env())


def test_verify_buggy_writes_counterexample(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--bound", 2, "--format", "json", "--cex-dir", tmp_path,
                       CORPUS / "cliserv_buggy.imp")
    assert code == 1
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    bad = [c for c in report["claims"] if c["verdict"] == "Counterexample"]
    assert [c["name"] for c in bad] == ["assignOneClientIMPL => assignOneClient"]
    pre = parse_structure((tmp_path / "assignOneClientIMPL__assignOneClient.pre.struct").read_text())
    post = parse_structure((tmp_path / "assignOneClientIMPL__assignOneClient.post.struct").read_text())
    prog = parse_program((CORPUS / "cliserv_buggy.imp").read_text())
    _, s2 = V.claim_formulas(prog, "assignOneClientIMPL", "assignOneClient")
    assert not V.holds_between(s2, pre, post, prog.vocab)
    # the buggy body run by hand
    u, b = pre.unary, pre.binary
    assert post.unary["WaitingClients"] == u["WaitingClients"] - u["ClVar"]
    assert post.unary["AssignedClients"] == u["AssignedClients"] | u["ClVar"]
    assert post.binary["server"] == {(x, y) for x, y in b["server"] if x not in u["ClVar"]} | {
        (x, y) for x in u["ClVar"] for y in u["SrvVar"]}
    assert post.binary["clients"] == b["clients"]


def test_verify_report_deterministic(capsys, tmp_path):
    args = ("verify", "--bound", 1, "--format", "json", "--no-timing", "--cex-dir", tmp_path,
            CORPUS / "cliserv.imp")
    code, first, _ = run(capsys, *args)
    assert code == 0
    jsonschema.validate(json.loads(first), SCHEMA)
    assert run(capsys, *args)[1] == first
    names = [c["name"] for c in json.loads(first)["claims"]]
    assert names == sorted(names)


@pytest.mark.parametrize("to", ["d2", "c2", "i2", "rl2"])
def test_translate(capsys, to):
    code, out, _ = run(capsys, "translate", "--to", to, "-e", "[[f => A' & B]]")
    assert code == 0 and out.strip()


def test_translate_satpreserving(capsys):
    code, out, _ = run(capsys, "translate", "--from", "fo", "--to", "c2", "--sat-preserving",
                       "-e", "exge 1 y. exge 1 x. (exge 1 x. P(x,y)) & Q(x,y)")
    assert code == 0


def test_dl_commands(capsys):
    assert run(capsys, "dl", "translate", "-e", "inv(restrict(f, A))")[:2] == (0, "~(f & A)\n")
    assert run(capsys, "dl", "translate", "-e", "compose(f, g)")[0] == 2
    assert run(capsys, "dl", "translate", "--full", "-e", "star(f)")[0] == 0
    assert run(capsys, "dl", "sat", "--bound", 2, "-e", "and(A, not(A))")[0] == 1
    assert run(capsys, "dl", "subsume", "--bound", 2, "-e", "and(A, B) [= A")[0] == 0
    assert run(capsys, "dl", "subsume", "--bound", 2, "-e", "A [= and(A, B)")[0] == 1


def test_classify(capsys):
    assert run(capsys, "classify-bsac", "-e", "{A & !B}")[:2] == (0, "BSAC\n")
    assert run(capsys, "classify-bsac", "-e", "card(>=2, A)")[:2] == (1, "not BSAC\n")


def test_usage_errors(capsys, tmp_path, monkeypatch):
    code, _, err = run(capsys, "sat", "-e", "A &")
    assert code == 2 and "1:4" in err
    assert run(capsys, "sat", "--bound", -1, "-e", "true")[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.rl", tmp_path / "x.struct")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2
    monkeypatch.setenv("ROLELOGIC_BUDGET", "soon")
    assert run(capsys, "sat", "-e", "true")[0] == 2


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("ROLELOGIC_BUDGET", "0.000001")
    code, _, _ = run(capsys, "valid", "--bound", 4, CORPUS / "entailment.rl")
    assert code == 3
