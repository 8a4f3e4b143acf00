from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import V
from starforcing.errors import BoundsError, DSLSyntaxError, InputError
from starforcing.ground_universe import (
    EMPTY,
    EnrichmentClass,
    HFSet,
    build_hf_universe,
    definable_subsets,
    gamma_index,
    hf_count,
    is_transitive,
    numeral,
    pair,
    parse_set,
    powerset,
    rank,
    transitive_closure,
)

S = parse_set


def ackermann(x: HFSet) -> int:
    # oracle, independent of HFSet.code
    return sum(2 ** ackermann(e) for e in x.elements)


def test_universe_sizes_and_members():
    assert build_hf_universe(1).members == (EMPTY,)
    u3 = build_hf_universe(3)
    assert set(u3.members) == {S("{}"), S("{{}}"), S("{{{}}}"), S("{{}, {{}}}")}
    assert len(build_hf_universe(4)) == 16
    for r in range(1, 5):
        assert set(build_hf_universe(r).members) == V(r)
        assert hf_count(r) == len(V(r))
    with pytest.raises(InputError):
        build_hf_universe(0)
    with pytest.raises(BoundsError):
        build_hf_universe(9)


def test_rank_examples():
    assert rank(EMPTY) == 0
    assert rank(S("{{}}")) == 1
    assert rank(S("{{}, {{}}}")) == 2
    assert numeral(3).rank == 3


def test_order_is_ackermann_order():
    xs = list(build_hf_universe(4).members)
    assert [ackermann(x) for x in xs] == list(range(16))
    assert sorted(reversed(xs)) == xs
    assert all(HFSet.from_code(ackermann(x)) is x for x in xs)


def test_interning_and_literals():
    a = HFSet([EMPTY, HFSet([EMPTY])])
    assert a is S("{ {{}} , {} }")
    assert str(a) == "{{}, {{}}}"
    for x in build_hf_universe(4):
        assert S(str(x)) is x
    for bad in ("{", "{}}", "{{},", "x"):
        with pytest.raises(DSLSyntaxError):
            S(bad)


def test_pair_and_closure():
    a, b = EMPTY, S("{{}}")
    assert pair(a, b) == HFSet([HFSet([a]), HFSet([a, b])])
    assert pair(a, a) == HFSet([HFSet([a])])
    assert transitive_closure(numeral(3)) == {numeral(0), numeral(1), numeral(2)}
    assert is_transitive(V(3))
    assert not is_transitive([S("{{}}")])


def test_gamma_examples_and_oracle():
    assert gamma_index(0, 0) == 0
    assert gamma_index(0, 1) == 1
    assert gamma_index(1, 1) == 3
    # oracle: sort pairs by (max, a, b)
    pairs = sorted(product(range(6), repeat=2), key=lambda p: (max(p), p[0], p[1]))
    assert [gamma_index(a, b) for a, b in pairs] == list(range(36))


def test_definable_subsets_examples():
    one = [EMPTY]
    assert definable_subsets(one, None, 3) == {frozenset(), frozenset(one)}
    H = EnrichmentClass("H", [EMPTY])
    assert frozenset({EMPTY}) in definable_subsets(sorted(V(2)), H, 1)
    for n in (2, 3):
        U = sorted(V(n))
        assert definable_subsets(U, None, len(U) * 4) == powerset(U)


def _syntactic_definable(U, size):
    """Oracle: evaluate every formula over x, y (x defining, y auxiliary) directly."""
    from starforcing.formula_lang import Var, enumerate_formulas, eval_in_structure

    found = set()
    for f in enumerate_formulas(size, [Var("x"), Var("y")], (), ("x", "y")):
        rows = {(u, w): eval_in_structure(U, None, f, env={"x": u, "y": w}) for u in U for w in U}
        if all(rows[u, w] == rows[u, U[0]] for u in U for w in U):
            found.add(frozenset(u for u in U if rows[u, U[0]]))
    return found


@pytest.mark.parametrize("n,size", [(2, 3), (3, 3)])
def test_definable_without_parameters_oracle(n, size):
    U = sorted(V(n))
    assert definable_subsets(U, None, size, params=False) == _syntactic_definable(U, size)


@given(st.integers(0, 2**16 - 1))
def test_code_round_trip(n):
    assert HFSet.from_code(n).code == n
