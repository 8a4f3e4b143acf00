from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from starforcing.errors import BoundsError, InputError
from starforcing.form_algebra import (
    EMPTY_TILDE,
    HModel,
    TildeBounds,
    TildeName,
    TildeSpace,
    Translator,
    bform_complement,
    bform_product,
    bform_sum,
    canonical_form,
)
from starforcing.form_algebra.checks import check_bform_soundness, check_mh_equality, sample_atoms, truth_table
from starforcing.form_algebra.semantics import build_L_hierarchy
from starforcing.formula_lang import BigAnd, BigOr, Eq, Exists, In, NameConst, Not, Pred, Var, eval_in_structure, parse_formula, to_text
from starforcing.ground_universe import EMPTY, EnrichmentClass, HFSet, build_hf_universe, powerset
from starforcing.names import EMPTY_NAME
from starforcing.star_forcing.values import interpret

SMALL = TildeBounds(max_level=2, template_size=2, max_params=1)


@pytest.fixture(scope="module")
def space():
    return TildeSpace(("H",), SMALL)


def H_model(space, H):
    return HModel(space, [EnrichmentClass("H", H)])


def tilde(level, text, *params):
    return TildeName(level, parse_formula(text, predicates=["H"]), params)


ONE_T = tilde(1, "H(v0)")
C = NameConst


def test_canonical_form_examples():
    a = Eq(C(ONE_T), C(ONE_T))
    phi = In(C(ONE_T), C(EMPTY_TILDE))
    assert canonical_form(BigOr((phi, Not(phi)))).is_one
    assert canonical_form(BigAnd((phi, Not(phi)))).is_zero
    e = canonical_form(a)
    assert not e.is_zero and not e.is_one
    with pytest.raises(InputError):
        canonical_form(Exists("x", Eq(Var("x"), Var("x"))))


def test_bform_ops():
    phi = canonical_form(Pred("H", C(ONE_T)))
    psi = canonical_form(In(C(EMPTY_TILDE), C(ONE_T)))
    assert bform_sum([phi, bform_complement(phi)]).is_one
    assert bform_product([]).is_one and bform_sum([]).is_zero
    assert ~(phi & psi) == (~phi | ~psi)
    assert ~(phi | psi) == (~phi & ~psi)
    assert (phi & psi) <= phi <= (phi | psi)


ATOMS = sample_atoms([EMPTY_TILDE, ONE_T, tilde(1, "v0 = v0")], 6)


@st.composite
def qf_over_atoms(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(st.sampled_from(ATOMS))
    kind = draw(st.sampled_from(["not", "and", "or"]))
    if kind == "not":
        return Not(draw(qf_over_atoms(depth - 1)))
    parts = tuple(draw(st.lists(qf_over_atoms(depth - 1), max_size=3)))
    return BigAnd(parts) if kind == "and" else BigOr(parts)


@settings(max_examples=150, deadline=None)
@given(qf_over_atoms(), qf_over_atoms())
def test_canonical_iff_same_truth_table(f, g):
    same = truth_table(f, ATOMS) == truth_table(g, ATOMS)
    assert (canonical_form(f) == canonical_form(g)) == same


def test_bform_soundness_small():
    rep = check_bform_soundness(ATOMS[:4], 3)
    assert rep.ok and not rep.violations


def test_L_hierarchy():
    L = build_L_hierarchy([], 3)
    assert L[0] == () and L[1] == (EMPTY,)
    for k in range(3):
        assert set(L[k + 1]) == {HFSet(s) for s in powerset(L[k])}
    with pytest.raises(BoundsError):
        build_L_hierarchy([], 5)


def test_interpret_H_examples(space):
    m = H_model(space, [EMPTY])
    assert m.interpret(EMPTY_TILDE) is EMPTY
    assert m.interpret(tilde(1, "not(v0 = v0)")) is EMPTY
    assert m.interpret(ONE_T) == HFSet([EMPTY])
    assert H_model(space, []).interpret(ONE_T) is EMPTY
    with pytest.raises(BoundsError):
        m.interpret(tilde(4, "v0 = v0"))


def _oracle_level(level, text, param_val, H):
    # i_H for a one-parameter template over L_level, computed by brute force
    L = build_L_hierarchy([], level)[level]
    f = parse_formula(text, predicates=["H"])
    return HFSet(x for x in L if eval_in_structure(L, {"H": H}, f, env={"v0": x, "v1": param_val}))


def test_interpret_H_against_brute_force(space):
    U = build_hf_universe(2).members
    for r in range(len(U) + 1):
        for H in combinations(U, r):
            m = H_model(space, H)
            for t in space.names(2):
                if len(t.params) == 1:
                    want = _oracle_level(1, to_text(t.formula), m.interpret(t.params[0]), frozenset(H))
                    assert m.interpret(t) == want


def test_asn_clauses(space):
    tr = Translator(space)
    a = C(ONE_T)
    assert tr.asn(0, parse_formula("exists x. x = x")).is_zero  # names_0 is empty
    ex = Exists("x", Eq(Var("x"), a))
    assert tr.asn(1, ex) == canonical_form(Eq(C(EMPTY_TILDE), a))
    assert tr.asn(1, Not(ex)) == ~tr.asn(1, ex)
    assert tr.asn_sentence(1, ex) == BigOr((Eq(C(EMPTY_TILDE), a),))
    with pytest.raises(InputError):
        tr.asn(1, Eq(Var("y"), a))


def test_translate_examples(space):
    tr = Translator(space)
    assert tr.translate(EMPTY_TILDE) is EMPTY_NAME
    f = tr.translate(TildeName(1, BigOr(()), ()))
    assert f.items() and all(v.is_zero for _, v in f.items())
    # [a = a] is an atom of its own, so a negated self-equality is not 0
    g = tr.translate(tilde(1, "not(v0 = v0)"))
    assert not any(v.is_zero for _, v in g.items())
    for t in space.all_names():
        assert tr.translate(t).rank <= t.level


def test_H_ultrafilter(space):
    m = H_model(space, [EMPTY])
    H = m.ultrafilter
    assert canonical_form(Eq(C(ONE_T), C(ONE_T))) in H
    elems = [canonical_form(x) for x in ATOMS]
    for e in elems:
        assert (e in H) != (~e in H)
    for e, f in combinations(elems, 2):
        assert ((e & f) in H) == (e in H and f in H)
    with pytest.raises(InputError):
        "x" in H


def test_mh_equality_every_H_small(space):
    tr = Translator(space)
    for r in range(3):
        for H in combinations(build_hf_universe(2).members, r):
            m = H_model(space, H)
            rep = check_mh_equality(m, tr)
            assert rep.ok, rep.render()
            for t in space.all_names():
                assert m.interpret(t) is interpret(m.ultrafilter, tr.translate(t))


def test_mh_default_bounds_one_H():
    sp = TildeSpace(("H",))
    assert [len(sp.names(k)) for k in range(4)] == [0, 1, 71, 2801]
    m = H_model(sp, [EMPTY, HFSet([EMPTY])])
    assert check_mh_equality(m, Translator(sp)).ok
