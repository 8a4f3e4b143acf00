import pytest

from starforcing import Workspace, build_hf_universe, mk_powerset_algebra
from starforcing.ground_universe import EMPTY, HFSet
from starforcing.names import Name, check_name
from starforcing.star_forcing.workspace import Bounds


def make_ws(atoms=("p", "q"), rank=3, max_name_rank=2, **kw):
    return Workspace(build_hf_universe(rank), mk_powerset_algebra(list(atoms)), bounds=Bounds(max_name_rank=max_name_rank), **kw)


@pytest.fixture(scope="session")
def ws_pq():
    return make_ws()


@pytest.fixture(scope="session")
def ws_p():
    return make_ws(("p",))


@pytest.fixture(scope="session")
def running(ws_pq):
    """y = {check(0) -> [p]}, z = {check(0) -> [q]} over atoms {p, q}."""
    alg = ws_pq.algebra
    e = check_name(EMPTY, alg)
    return {
        "alg": alg,
        "e": e,
        "y": Name({e: alg.atom("p")}),
        "z": Name({e: alg.atom("q")}),
    }


def V(n):
    """V_n as a python set of HFSets (independent oracle: iterate powersets)."""
    level = set()
    for _ in range(n):
        elems = sorted(level)
        level = {HFSet(e for i, e in enumerate(elems) if m >> i & 1) for m in range(1 << len(elems))}
    return level
