"""Acceptance criteria 1-11, one printed pass/fail line each."""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import make_ws
from starforcing.form_algebra import suites as form
from starforcing.names import EMPTY_NAME, Name, check_name
from starforcing.ground_universe import EMPTY
from starforcing.star_forcing import suites as star
from starforcing.star_forcing.values import value_atomic, value_star
from starforcing.formula_lang import Eq, NameConst
from starforcing.workspace_file import load_workspace

ROOT = Path(__file__).resolve().parent.parent
WS = ROOT / "workspaces"


@pytest.fixture
def report_line(capsys):
    def emit(n, ok, what, t0, limit=None):
        dt = time.perf_counter() - t0
        timing = f"{dt:.1f}s" + (f" (limit {limit}s)" if limit else "")
        with capsys.disabled():
            print(f"\ncriterion {n:>2}: {'PASS' if ok else 'FAIL'}  {what}  [{timing}]")
        return ok and (limit is None or dt < limit)

    return emit


def _ok(*reports):
    return all(r.ok and not r.violations for r in reports)


def test_criterion_01_bvm_laws(report_line):
    t0 = time.perf_counter()
    reps = [star.bvm_laws(make_ws(atoms), 2) for atoms in (("p",), ("p", "q"))]
    laws = [r for rep in reps for r in rep.records if r.claim.startswith("law")]
    assert report_line(1, _ok(*reps) and len(laws) == 8, "laws 1-4 exact on M_2, atoms 1 and 2", t0, 60)


def test_criterion_02_los(report_line):
    t0 = time.perf_counter()
    reps = [star.los(make_ws(atoms), max_size=6) for atoms in (("p",), ("p", "q"))]
    assert report_line(2, _ok(*reps), "forcing theorem, q.f. size <= 6, M_2, every principal G", t0)


def test_criterion_03_witness(report_line):
    t0 = time.perf_counter()
    rep = star.witness(make_ws(("p", "q", "r"), max_name_rank=1), max_atoms=3)
    assert report_line(3, _ok(rep) and len(rep.records) == 1 + 2 + 3 + 3, "sum in G has a summand in G, atoms <= 3",
                       t0)


def test_criterion_04_iso_and_ext(report_line):
    t0 = time.perf_counter()
    ws = make_ws()
    zero = Name({check_name(EMPTY, ws.algebra): ws.algebra.zero})
    star_pair = (value_star(ws, Eq(NameConst(EMPTY_NAME), NameConst(zero))).is_zero
                 and value_atomic(ws, EMPTY_NAME, zero, "=").is_one)
    iso, ext = star.iso(ws), star.ext(ws)
    shown = any("star quotient violates" in r.claim and r.ok for r in ext.records)
    assert report_line(4, _ok(iso, ext) and star_pair and shown,
                       "[x] -> i_G(x) iso on M_0..M_2; induced extensional; star pair violates", t0)


def test_criterion_05_check_names(report_line):
    t0 = time.perf_counter()
    reps = [star.check_names(make_ws(atoms), 4) for atoms in (("p",), ("p", "q"), ("p", "q", "r"))]
    assert report_line(5, _ok(*reps), "i_G(check(x)) = x, rank < 4, every G", t0)


def test_criterion_06_fo_stable(report_line):
    t0 = time.perf_counter()
    ws = make_ws()
    n = len(star.fo_sentences(ws))
    rep = star.fo_stable(ws)
    assert report_line(6, _ok(rep) and n >= 50, f"value_fo stable, {n} quantified sentences", t0)


def test_criterion_07_reflection(report_line):
    t0 = time.perf_counter()
    ws = make_ws(("p",))
    rep = star.reflect(ws)
    assert report_line(7, _ok(rep), "q.f. reflect; closure clauses; non-reflecting formula found", t0)


def test_criterion_08_mh_all(report_line):
    t0 = time.perf_counter()
    ws = load_workspace(WS / "mh.ini")
    assert len(ws.universe.members) == 4
    rep = form.mh_all(ws)
    assert report_line(8, _ok(rep), "i_H = i_H o I on every tilde name, all 16 H in V_3", t0, 300)


def test_criterion_09_bform(report_line):
    t0 = time.perf_counter()
    ws = load_workspace(WS / "mh.ini")
    b = form.bform(ws, n_atoms=6, size=4)
    h = form.mh(ws)
    laws = [r for r in h.records if r.claim in ("ultrafilter and M-completeness", "sum in H iff a summand is")]
    assert report_line(9, _ok(b, h) and len(laws) == 2,
                       "canonical forms = truth tables on 6 atoms; H ultrafilter and sum laws", t0)


def test_criterion_10_zfc(report_line):
    t0 = time.perf_counter()
    reps = [star.zfc(make_ws(atoms)) for atoms in (("p",), ("p", "q"))]
    assert report_line(10, _ok(*reps), "pairing, union, separation, replacement and choice names", t0)


COMMANDS = [
    ["value", "check({}) = check({})", "--mode", "star", "--workspace", "running.ini"],
    ["value", "n1 = n2", "--workspace", "pair.ini"],
    ["value", "exists x. x in n1", "--mode", "fo", "--workspace", "running.ini"],
    ["value", "exists x. x in n1", "--mode", "alpha:1", "--workspace", "running.ini"],
    ["check", "--suite", "los", "--workspace", "running.ini"],
    ["check", "--suite", "ext", "--workspace", "running.ini"],
    ["check", "--suite", "reflect", "--ultrafilter", "p", "--workspace", "running.ini"],
    ["check", "--suite", "mh", "--workspace", "mh.ini"],
    ["check", "--suite", "bform", "--workspace", "mh.ini"],
    ["quotient", "--ultrafilter", "p", "--workspace", "running.ini"],
    ["quotient", "--ultrafilter", "q", "--mode", "star", "--stratum", "1", "--workspace", "running.ini"],
    ["value", "and(", "--workspace", "running.ini"],
]


def test_criterion_11_determinism(report_line):
    t0 = time.perf_counter()

    def run(argv):
        argv = [str(WS / a) if a.endswith(".ini") else a for a in argv]
        p = subprocess.run([sys.executable, "-m", "starforcing.cli", *argv], capture_output=True, cwd=ROOT)
        return p.returncode, p.stdout, p.stderr

    same = [run(c) == run(c) for c in COMMANDS]
    assert report_line(11, all(same), f"{len(COMMANDS)} CLI commands byte-identical over two runs", t0)
