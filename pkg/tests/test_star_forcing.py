import random
from functools import lru_cache

import pytest

from starforcing.errors import BoundsError, InputError
from starforcing.formula_lang import Eq, In, NameConst, Not, BigAnd, parse_formula
from starforcing.ground_universe import EMPTY, HFSet, build_hf_universe
from starforcing.names import EMPTY_NAME, Name, check_name
from starforcing.star_forcing import firstorder as fo
from starforcing.star_forcing.constructions import replacement_image_name
from starforcing.star_forcing.quotient import INDUCED, STAR, check_extensionality, check_forcing_theorem, quotient_model
from starforcing.star_forcing.values import (
    generic_check,
    interpret,
    truth_in_extension,
    value_atomic,
    value_G_pred,
    value_qf,
    value_star,
)


def naive_values(full):
    """Oracle: the induced value recursion written straight from its definition."""

    @lru_cache(maxsize=None)
    def mem(x, y):
        acc = 0
        for t, b in y.items():
            acc |= eq(x, t) & b.mask
        return acc

    @lru_cache(maxsize=None)
    def eq(x, y):
        acc = full
        for t, b in x.items():
            acc &= (full ^ b.mask) | mem(t, y)
        for t, b in y.items():
            acc &= (full ^ b.mask) | mem(t, x)
        return acc

    return mem, eq


def C(x):
    return NameConst(x)


def test_value_star_examples(ws_pq, running):
    y, e, alg = running["y"], running["e"], running["alg"]
    a = ws_pq.stratum(2).names[17]
    assert value_star(ws_pq, Eq(C(a), C(a))).is_one
    assert value_star(ws_pq, Eq(C(y), C(running["z"]))).is_zero
    assert value_star(ws_pq, In(C(e), C(y))) == alg.atom("p")
    assert value_star(ws_pq, In(C(y), C(y))).is_zero
    with pytest.raises(InputError):
        value_star(ws_pq, parse_formula("exists x. x = x"))


def test_value_atomic_examples(ws_pq, running):
    y, z, e, alg = running["y"], running["z"], running["e"], running["alg"]
    assert value_atomic(ws_pq, e, e, "=").is_one
    assert value_atomic(ws_pq, e, y, "in") == alg.atom("p")
    assert value_atomic(ws_pq, y, z, "=").is_zero
    zero = Name({e: alg.zero})
    assert value_atomic(ws_pq, EMPTY_NAME, zero, "=").is_one
    assert value_star(ws_pq, Eq(C(EMPTY_NAME), C(zero))).is_zero


def test_values_against_naive_recursion(ws_pq):
    mem, eq = naive_values(ws_pq.algebra.full_mask)
    names = ws_pq.stratum(2).names
    rng = random.Random(1)
    pairs = [(rng.choice(names), rng.choice(names)) for _ in range(1500)]
    pairs += [(x, y) for x in ws_pq.stratum(1).names for y in ws_pq.stratum(1).names]
    for x, y in pairs:
        assert ws_pq.cache.equal(x, y) == eq(x, y)
        assert ws_pq.cache.member(x, y) == mem(x, y)


def test_value_qf_examples(ws_pq, running):
    y, e, alg = running["y"], running["e"], running["alg"]
    assert value_qf(ws_pq, Not(In(C(e), C(y)))) == alg.atom("q")
    assert value_qf(ws_pq, BigAnd(())).is_one
    assert value_qf(ws_pq, parse_formula("or(name{} = name{}, name{} in name{})")).is_one


def test_interpret_examples(ws_pq, running):
    y = running["y"]
    Up, Uq = ws_pq.ultrafilter("p"), ws_pq.ultrafilter("q")
    assert interpret(Up, EMPTY_NAME) is EMPTY
    assert interpret(Up, y) == HFSet([EMPTY])
    assert interpret(Uq, y) is EMPTY
    for x in build_hf_universe(4):
        assert interpret(Up, check_name(x, ws_pq.algebra)) is x


def test_quotient_examples(ws_pq, running):
    zero = Name({running["e"]: ws_pq.algebra.zero})
    G = ws_pq.ultrafilter("p")
    ind = quotient_model(ws_pq, G, [EMPTY_NAME, zero], INDUCED)
    star = quotient_model(ws_pq, G, [EMPTY_NAME, zero], STAR)
    assert len(ind.classes) == 1 and len(star.classes) == 2
    assert check_extensionality(ind).ok
    assert not check_extensionality(star).ok
    with pytest.raises(InputError):
        quotient_model(ws_pq, G, [EMPTY_NAME], "other")


def test_forcing_theorem_examples(ws_pq, running):
    y, e = running["y"], running["e"]
    s = In(C(e), C(y))
    assert truth_in_extension(ws_pq, ws_pq.ultrafilter("p"), s)
    assert not truth_in_extension(ws_pq, ws_pq.ultrafilter("q"), s)
    for G in ws_pq.ultrafilters():
        assert check_forcing_theorem(ws_pq, G, [s, Eq(C(y), C(y))]).ok


def test_value_fo_examples(ws_pq, running):
    y = running["y"]
    v = fo.value_fo(ws_pq, Exists_in(y), 1)
    assert v.value == ws_pq.algebra.atom("p") and v.stable
    assert fo.value_fo(ws_pq, parse_formula("exists x. x = x"), 0).value.is_one
    assert fo.value_fo(ws_pq, parse_formula("exists x. not(x = x)"), 2).value.is_zero
    with pytest.raises(InputError):
        fo.value_fo(ws_pq, parse_formula("x = x"), 1)


def Exists_in(y):
    from starforcing.formula_lang import Exists, Var

    return Exists("x", In(Var("x"), C(y)))


def test_value_alpha_examples(ws_pq, running):
    y = running["y"]
    f = Exists_in(y)
    assert fo.value_alpha(ws_pq, f, 1) == ws_pq.algebra.atom("p")
    assert fo.value_alpha(ws_pq, f, 0, strict=False) == ws_pq.algebra.atom("p")
    with pytest.raises(InputError):
        fo.value_alpha(ws_pq, f, 0)
    g = In(C(running["e"]), C(y))
    assert all(fo.value_alpha(ws_pq, g, a) == value_qf(ws_pq, g) for a in (1, 2))


def test_reflection_examples(ws_pq):
    G = ws_pq.ultrafilter("p")
    qf = parse_formula("x0 in x1")
    assert all(fo.reflects(ws_pq, G, qf, a) for a in range(3))
    f = parse_formula("exists x1. x0 in x1")
    for a in range(3):
        assert fo.reflects(ws_pq, G, Not(f), a) == fo.reflects(ws_pq, G, f, a)
    assert not fo.reflects(ws_pq, G, f, 0)
    found = fo.find_nonreflecting(ws_pq, G)
    assert found is not None and not fo.reflects(ws_pq, G, *found)
    with pytest.raises(BoundsError):
        fo.reflects(ws_pq, G, f, 5)


def test_star_complete_clause1(ws_p):
    rep = fo.check_star_complete(ws_p, ws_p.ultrafilter("p"), max_size=2)
    clause1 = [r for r in rep if r.claim == "clause1"]
    assert clause1 and all(r.ok for r in clause1)


def test_G_predicate(ws_pq):
    alg = ws_pq.algebra
    for b in alg.elements():
        assert value_G_pred(ws_pq, generic_check(b)) == b
    names = ws_pq.stratum(1).names
    for G in ws_pq.ultrafilters():
        from starforcing.star_forcing.values import generic_extension

        ext = generic_extension(G)
        for a in names:
            assert (interpret(G, a) in ext) == (value_G_pred(ws_pq, a) in G)


def test_replacement_examples(ws_p):
    G = ws_p.ultrafilter("p")
    X = ws_p.stratum(1).names[-1]
    ident = replacement_image_name(ws_p, parse_formula("v0 = v1"), X, [], 1)
    assert interpret(G, ident) == interpret(G, X)
    empty = replacement_image_name(ws_p, parse_formula("v0 = v1"), EMPTY_NAME, [], 1)
    assert all(v.is_zero for _, v in empty.items()) and interpret(G, empty) is EMPTY
    const = replacement_image_name(ws_p, parse_formula("v1 = check({})"), X, [], 2)
    assert interpret(G, const).is_subset(HFSet([EMPTY]))
