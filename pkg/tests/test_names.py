from itertools import product

import pytest

from conftest import V
from starforcing.boolean_algebra import mk_powerset_algebra
from starforcing.errors import AlgebraMismatchError, BoundsError
from starforcing.ground_universe import EMPTY, HFSet, build_hf_universe, pair
from starforcing.names import EMPTY_NAME, Name, bpair_name, check_name, choice_fn_name, mk_name, stratum, stratum_size
from starforcing.star_forcing.values import interpret
from starforcing.boolean_algebra import enumerate_ultrafilters

P = mk_powerset_algebra(["p"])
PQ = mk_powerset_algebra(["p", "q"])


def test_mk_name_examples():
    assert mk_name({}) is EMPTY_NAME and EMPTY_NAME.rank == 0
    e = check_name(EMPTY, PQ)
    y = mk_name({e: PQ.atom("p")})
    assert y.rank == 1
    z = mk_name({e: PQ.zero, y: PQ.one})
    assert z.rank == 2
    assert mk_name({e: PQ.atom("p")}) is y


def test_check_name_examples_and_injectivity():
    assert check_name(EMPTY, P) is EMPTY_NAME
    one = check_name(HFSet([EMPTY]), P)
    assert one.items() == ((EMPTY_NAME, P.one),)
    sets = build_hf_universe(4).members
    assert len({check_name(x, PQ) for x in sets}) == len(sets)


def test_mixed_algebras():
    with pytest.raises(AlgebraMismatchError):
        Name({EMPTY_NAME: P.one, check_name(HFSet([EMPTY]), PQ): PQ.one})


def _count_names(alg, alpha):
    # oracle: partial maps from names of the previous stratum into the algebra
    if alpha == 0:
        return 1
    return (alg.size + 1) ** _count_names(alg, alpha - 1)


def test_strata():
    assert stratum(P, 0).names == (EMPTY_NAME,)
    assert len(stratum(P, 1)) == 3
    assert len(stratum(PQ, 1)) == 5
    for alg in (P, PQ):
        for a in range(3):
            s = stratum(alg, a)
            assert len(s) == stratum_size(alg, a) == _count_names(alg, a)
            assert all(n.rank <= a for n in s)
            assert set(stratum(alg, a).names) <= set(stratum(alg, a + 1).names) if a < 2 else True
    with pytest.raises(BoundsError):
        stratum(PQ, 3, cap=1000)


def test_bpair_examples():
    e = check_name(EMPTY, PQ)
    for G in enumerate_ultrafilters(PQ):
        assert interpret(G, bpair_name(e, e, PQ)) == pair(EMPTY, EMPTY)
        for x, b in product(sorted(V(3)), stratum(PQ, 1).names):
            assert interpret(G, bpair_name(check_name(x, PQ), b, PQ)) == pair(x, interpret(G, b))
    b = stratum(PQ, 2).names[-1]
    assert bpair_name(e, b, PQ).rank == max(e.rank, b.rank) + 2


def test_choice_fn():
    assert choice_fn_name(EMPTY_NAME) is EMPTY_NAME
    for X in stratum(PQ, 2).names[::7]:
        for G in enumerate_ultrafilters(PQ):
            f = interpret(G, choice_fn_name(X, PQ))
            graph = {}
            for z in f:
                els = sorted(z, key=len)
                a = next(iter(els[0]))
                bs = [u for u in els[-1] if u is not a] or [a]
                assert graph.setdefault(a, bs[0]) is bs[0]
            assert set(graph.values()) >= {interpret(G, t) for t in X.dom}
