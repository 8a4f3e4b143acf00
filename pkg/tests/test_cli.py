import json
from pathlib import Path

import pytest

from starforcing.cli import main
from starforcing.errors import InputError
from starforcing.ground_universe import EMPTY, HFSet
from starforcing.workspace_file import load_workspace, parse_workspace

WS = Path(__file__).resolve().parent.parent / "workspaces"
RUNNING, PAIR, MH = (str(WS / f) for f in ("running.ini", "pair.ini", "mh.ini"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_workspace_file_parses():
    ws = load_workspace(RUNNING)
    assert ws.algebra.atoms == ("p", "q") and ws.bounds.max_name_rank == 2
    e = ws.names["n1"].dom[0]
    assert ws.names["n1"].items() == ((e, ws.algebra.atom("p")),)
    assert ws.names["n3"].rank == 2
    mh = load_workspace(MH)
    assert [x.predicate_name for x in mh.enrichments] == ["H"]
    assert mh.enrichments[0].extension == frozenset([EMPTY])
    assert mh.tildes["pick"].params == (mh.tildes["hz"],)
    assert load_workspace(RUNNING, max_rank=1).bounds.max_name_rank == 1


@pytest.mark.parametrize("text", [
    "[algebra]\natoms = p\n",
    "[universe]\nrank = x\n[algebra]\natoms = p\n",
    "[universe]\nrank = 2\n[algebra]\natoms = p\n[names]\na = name:b\n",
    "[universe]\nrank = 2\n[algebra]\natoms = p\n[bounds]\nspeed = 3\n",
    "[universe]\nrank = 2\n[algebra]\natoms = p\n[other]\n",
    "[universe]\nrank = 2\n[algebra]\natoms = p\n[tilde]\nt = 1 | v0 = v0 | u\n",
])
def test_workspace_file_errors(text):
    with pytest.raises(InputError):
        parse_workspace(text)


def test_sets_section_and_enrich_reference():
    ws = parse_workspace("[universe]\nrank = 3\n[algebra]\natoms = p\n[sets]\ns = { {}, {{}} }\n[enrich]\nA = s\n")
    assert ws.enrichments[0].extension == frozenset([EMPTY, HFSet([EMPTY])])


def test_value_star_example(capsys):
    code, out, _ = run(capsys, "value", "check({}) = check({})", "--mode", "star", "--workspace", RUNNING)
    line, rec = out.splitlines()
    assert code == 0 and line == "[p q]"
    assert json.loads(rec)["rhs"] == "star"


def test_value_pair_induced_vs_star(capsys):
    assert run(capsys, "value", "n1 = n2", "--workspace", PAIR)[1].startswith("[p q]\n")
    assert run(capsys, "value", "n1 = n2", "--mode", "star", "--workspace", PAIR)[1].startswith("[]\n")


def test_value_fo_and_alpha(capsys):
    code, out, _ = run(capsys, "value", "exists x. x in n1", "--mode", "fo", "--workspace", RUNNING)
    assert code == 0 and out.startswith("[p]\n") and "stable=true" in out
    assert run(capsys, "value", "exists x. x in n1", "--mode", "alpha:1", "--workspace", RUNNING)[1].startswith("[p]\n")


@pytest.mark.parametrize("argv,code", [
    (["value", "exists x. x in n1", "--mode", "induced"], 2),
    (["value", "and(", "--mode", "star"], 2),
    (["value", "n9 in n1"], 2),  # undeclared, so a free variable
    (["value", "n1 in n1", "--mode", "alpha:7"], 3),
    (["value", "n1 in n1", "--mode", "bogus"], 2),
    (["check", "--suite", "nope"], 2),
    (["quotient", "--ultrafilter", "r"], 2),
    (["check", "--suite", "ext"], 0),
    (["check", "--suite", "iso"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv, "--workspace", RUNNING)[0] == code


def test_violation_exit(capsys, monkeypatch):
    from starforcing import cli
    from starforcing.report import Report

    def broken(ws, G):
        rep = Report("broken")
        rep.add("claim", "instance", 1, 0, False)
        return rep

    monkeypatch.setitem(cli.ALL_SUITES, "broken", broken)
    code, out, _ = run(capsys, "check", "--suite", "broken", "--workspace", RUNNING)
    assert code == 1 and "instance" in out


def test_missing_workspace(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--suite", "iso", "--workspace", str(tmp_path / "none.ini"))
    assert code == 2 and "cannot read" in err


def test_stratum_bound_exit(capsys):
    assert run(capsys, "quotient", "--ultrafilter", "p", "--stratum", "3", "--workspace", RUNNING)[0] == 3


def test_quotient_listing(capsys):
    code, out, _ = run(capsys, "quotient", "--ultrafilter", "p", "--names", "n1,n2,n3", "--workspace", RUNNING)
    lines = out.splitlines()
    classes = [json.loads(x) for x in lines[:3]]
    assert code == 0 and [c["image"] for c in classes] == ["{{}}", "{}", "{{{}}}"]
    assert json.loads(lines[3]) == {"E": [[0, 2], [1, 0]]}
    assert lines[-1].endswith("extensional=true")
    _, star, _ = run(capsys, "quotient", "--ultrafilter", "p", "--names", "n1,n2", "--mode", "star",
                     "--workspace", PAIR)
    assert "classes=2 images=1 extensional=false" in star


def test_out_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "o.txt"
    argv = ["quotient", "--ultrafilter", "q", "--stratum", "1", "--workspace", RUNNING]
    _, out, _ = run(capsys, *argv)
    assert run(capsys, *argv, "--out", str(target)) == (0, "", "")
    assert target.read_text(encoding="utf-8") == out


def test_form_suites_from_cli(capsys):
    code, out, _ = run(capsys, "check", "--suite", "bform", "--workspace", MH)
    assert code == 0 and "violation" not in out.lower().replace("violations=0", "")
