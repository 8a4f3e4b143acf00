from itertools import product

import pytest
from hypothesis import given, strategies as st

from starforcing.boolean_algebra import (
    Ultrafilter,
    all_families,
    check_m_complete,
    complement,
    enumerate_ultrafilters,
    mk_powerset_algebra,
    product as bprod,
    sum_,
)
from starforcing.errors import AlgebraMismatchError, DSLSyntaxError, InputError

ALG = mk_powerset_algebra(["p", "q", "r"])


def test_literals_round_trip():
    for e in ALG.elements():
        assert ALG.parse_element(str(e)) == e
    assert str(ALG.zero) == "[]"
    assert str(ALG.one) == "[p q r]"
    assert ALG.parse_element("[r p]") == ALG.element(["p", "r"])


@pytest.mark.parametrize("bad", ["p q", "[p", "[x]"])
def test_bad_literals(bad):
    with pytest.raises((DSLSyntaxError, InputError)):
        ALG.parse_element(bad)


def test_bad_algebras():
    with pytest.raises(InputError):
        mk_powerset_algebra([])
    with pytest.raises(InputError):
        mk_powerset_algebra(["p", "p"])
    with pytest.raises(InputError):
        mk_powerset_algebra(["1x"])


def test_empty_sum_and_product():
    assert sum_(ALG, []) == ALG.zero
    assert bprod(ALG, []) == ALG.one


def test_mixed_algebras_rejected():
    other = mk_powerset_algebra(["a"])
    with pytest.raises(AlgebraMismatchError):
        sum_(ALG, [other.one])
    with pytest.raises(AlgebraMismatchError):
        ALG.one & other.one


elems = st.sampled_from(list(ALG.elements()))


@given(elems, elems, elems)
def test_lattice_laws_against_set_oracle(a, b, c):
    # oracle: the elements as python sets of atom labels
    S = lambda e: set(e.atomset)
    assert S(a & b) == S(a) & S(b)
    assert S(a | b) == S(a) | S(b)
    assert S(~a) == {"p", "q", "r"} - S(a)
    assert (a <= b) == (S(a) <= S(b))
    assert a & (b | c) == (a & b) | (a & c)
    assert complement(a | b) == ~a & ~b


def test_ultrafilters_are_principal():
    us = enumerate_ultrafilters(ALG)
    assert [str(u) for u in us] == ["U_p", "U_q", "U_r"]
    for u in us:
        for a, b in product(ALG.elements(), repeat=2):
            assert ((a & b) in u) == (a in u and b in u)
            assert (a in u) != (~a in u)
    with pytest.raises(InputError):
        Ultrafilter(ALG, "s")


def test_families_and_m_completeness():
    fams = list(all_families(ALG))
    assert len(fams) == 2 ** ALG.size
    for u in enumerate_ultrafilters(ALG):
        rep = check_m_complete(u, fams)
        assert rep.ok and rep.checked == len(fams)
    # a contrived non-ultrafilter membership test fails the law
    class Fake:
        algebra = ALG
        def __contains__(self, e):
            return e.mask == ALG.full_mask
        def __str__(self):
            return "fake"
    rep = check_m_complete(Fake(), [(ALG.atom("p"), ALG.element(["q", "r"]))])
    assert not rep.ok
