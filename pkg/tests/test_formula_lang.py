import pytest
from hypothesis import given, settings, strategies as st

from conftest import V
from starforcing.errors import DSLSyntaxError, InputError
from starforcing.formula_lang import (
    FALSE,
    TRUE,
    BigAnd,
    BigOr,
    Eq,
    Exists,
    In,
    Not,
    Pred,
    SetConst,
    Var,
    atomic_formulas,
    enumerate_formulas,
    eval_in_structure,
    formula_size,
    free_vars,
    is_quantifier_free,
    parse_formula,
    substitute,
    to_text,
)
from starforcing.ground_universe import EMPTY, EnrichmentClass, parse_set

x, a, b = Var("x"), Var("a"), Var("b")


def test_parse_examples():
    assert parse_formula("x = x") == Eq(x, x)
    assert parse_formula("not (a in b)") == Not(In(a, b))
    f = parse_formula("exists x. and(x = a, H(x))")
    assert f == Exists("x", BigAnd((Eq(x, a), Pred("H", x))))
    assert parse_formula("a != b") == Not(Eq(a, b))
    assert parse_formula("forall x. x in a") == Not(Exists("x", Not(In(x, a))))


def test_quantifier_free_examples():
    assert is_quantifier_free(parse_formula("x = y"))
    assert not is_quantifier_free(parse_formula("exists x. x = x"))
    assert is_quantifier_free(parse_formula("and(or(a in b), not(c = d))"))


@pytest.mark.parametrize("bad", ["x =", "and(x = x", "exists in. x = x", "x in", "x = x y", "K(x)"])
def test_syntax_errors(bad):
    with pytest.raises(DSLSyntaxError):
        parse_formula(bad, predicates=("H",))


def test_free_vars_and_substitution():
    f = parse_formula("exists x. and(x in y, z = x)")
    assert free_vars(f) == {"y", "z"}
    g = substitute(f, {"x": SetConst(EMPTY), "y": SetConst(EMPTY)})
    assert free_vars(g) == {"z"}
    assert to_text(g) == "exists x. and(x in {}, z = x)"


def test_eval_examples():
    d2 = sorted(V(2))
    assert eval_in_structure(d2, None, parse_formula("{} in {{}}"))
    assert not eval_in_structure([EMPTY], None, parse_formula("exists x. not(x = {})"))
    H = EnrichmentClass("H", [EMPTY])
    assert eval_in_structure(d2, [H], parse_formula("exists x. and(H(x), x in {{}})"))
    assert eval_in_structure(d2, None, TRUE) and not eval_in_structure(d2, None, FALSE)
    with pytest.raises(InputError):
        eval_in_structure([EMPTY], None, parse_formula("{{}} = {}"))
    with pytest.raises(InputError):
        eval_in_structure([EMPTY], None, parse_formula("H({})"))


def test_enumeration_counts():
    terms = [x, a]
    atoms = atomic_formulas(terms, ("H",))
    assert len(atoms) == 4 + 4 + 2
    size1 = list(enumerate_formulas(1, terms, ("H",)))
    assert len(size1) == len(atoms) + 2  # plus and() and or()
    # size 2: negations of size 1, one-element and/or lists of size 1
    size2 = [f for f in enumerate_formulas(2, terms, ("H",)) if formula_size(f) == 2]
    assert len(size2) == 3 * len(size1)
    fs = list(enumerate_formulas(3, terms, ("H",), ("x",)))
    assert len(fs) == len(set(fs))
    assert all(formula_size(f) <= 3 for f in fs)


# ---------------------------------------------------------------- round trip

var = st.sampled_from([Var("x"), Var("y"), Var("v0")])
const = st.sampled_from([SetConst(EMPTY), SetConst(parse_set("{{}, {{}}}"))])
term = st.one_of(var, const)
atom = st.one_of(
    st.builds(Eq, term, term), st.builds(In, term, term), st.builds(Pred, st.sampled_from(["H", "A"]), term))


def extend(children):
    return st.one_of(
        st.builds(Not, children),
        st.builds(lambda ps: BigAnd(tuple(ps)), st.lists(children, max_size=3)),
        st.builds(lambda ps: BigOr(tuple(ps)), st.lists(children, max_size=3)),
        st.builds(Exists, st.sampled_from(["x", "y", "z"]), children),
    )


formulas = st.recursive(atom, extend, max_leaves=8)


@settings(max_examples=300)
@given(formulas)
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@settings(max_examples=200)
@given(formulas)
def test_eval_respects_connectives(f):
    dom = sorted(V(2) | {parse_set("{{}, {{}}}")})
    preds = {"H": {EMPTY}, "A": set()}
    env = {"x": EMPTY, "y": dom[-1], "v0": dom[1], "z": EMPTY}
    env = {k: v for k, v in env.items()}
    t = eval_in_structure(dom, preds, f, env=env)
    assert eval_in_structure(dom, preds, Not(f), env=env) == (not t)
    assert eval_in_structure(dom, preds, BigAnd((f, f)), env=env) == t
    assert eval_in_structure(dom, preds, BigOr((f, Not(f))), env=env)
