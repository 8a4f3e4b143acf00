"""Names built in the ZFC argument, checked instance by instance under i_G."""

from __future__ import annotations

from itertools import product as cartesian
from typing import Sequence

import numpy as np

from ..boolean_algebra import Ultrafilter
from ..errors import InputError
from ..formula_lang import Formula, NameConst, eval_in_structure, free_vars, parse_formula, substitute
from ..ground_universe import HFSet, pair
from ..names import Name, bpair_name, braces, choice_fn_name
from ..report import Report
from .values import extension_predicates, interpret
from .workspace import Workspace


def pair_name(ws: Workspace, a: Name, b: Name) -> Name:
    return braces(ws.algebra, a, b)


def union_name(ws: Workspace, s: Name) -> Name:
    """U(u) = Σ_{t ∈ dom s} s(t) · t(u)."""
    acc: dict[Name, int] = {}
    for t, st in s.items():
        for u, tu in t.items():
            acc[u] = acc.get(u, 0) | (st.mask & tu.mask)
    return Name((u, ws.algebra.from_mask(m)) for u, m in acc.items())


def _bind(f: Formula, params: Sequence[Name], first: int) -> Formula:
    return substitute(f, {f"v{first + k}": NameConst(p) for k, p in enumerate(params)})


def _check_stratum(ws: Workspace, beta: int, what: str, names: Sequence[Name]) -> None:
    for x in names:
        if x.rank > beta:
            raise InputError(f"{what} {x.literal()} has rank {x.rank} above stratum {beta}")


def separation_name(ws: Workspace, a: Name, phi: Formula, params: Sequence[Name], beta: int) -> Name:
    """t ↦ a(t) · ||φ(t, params)||_β for t ∈ dom a; φ speaks of v0 and v1, v2, ..."""
    _check_stratum(ws, beta, "key", a.dom)
    _check_stratum(ws, beta, "parameter", params)
    body = _bind(phi, params, 1)
    ev = ws.evaluator(beta)
    col = ev.table_for(body, ("v0",))
    idx = ws.tables(beta).index
    return Name((t, ws.algebra.from_mask(b.mask & int(col[idx[t]]))) for t, b in a.items())


def replacement_image_name(ws: Workspace, phi: Formula, X: Name, params: Sequence[Name], beta: int) -> Name:
    """Ẏ(ȧ) = Σ_{x ∈ dom X} ||φ(x, ȧ, params)||_β · ||x ∈ X|| over ȧ ∈ M_β.

    ``phi`` uses v0 for x, v1 for ȧ and v2, v3, ... for the parameters.
    """
    _check_stratum(ws, beta, "key", X.dom)
    _check_stratum(ws, beta, "parameter", params)
    body = _bind(phi, params, 2)
    extra = free_vars(body) - {"v0", "v1"}
    if extra:
        raise InputError(f"unbound variables {sorted(extra)} in the replacement formula")
    tb = ws.tables(beta)
    T = ws.evaluator(beta).table_for(body, ("v0", "v1"))
    Y = np.zeros(tb.n, dtype=T.dtype)
    for x in X.dom:
        Y |= T[tb.index[x]] & T.dtype.type(ws.cache.member(x, X))
    return Name((tb.names[j], ws.algebra.from_mask(int(Y[j]))) for j in range(tb.n))


# ---------------------------------------------------------------- ground-side oracles

def real_union(s: HFSet) -> HFSet:
    return HFSet(e for z in s for e in z)


def model_of(ws: Workspace, G: Ultrafilter, beta: int) -> tuple[HFSet, ...]:
    """i_G[M_β], the interpreted stratum."""
    memo = ws.memo("models")
    if (G, beta) not in memo:
        memo[G, beta] = tuple(sorted({interpret(G, x) for x in ws.stratum(beta).names}))
    return memo[G, beta]


def _sat(ws, G, dom, f: Formula, env) -> bool:
    denote = lambda t: interpret(G, t.value) if isinstance(t, NameConst) else None
    return eval_in_structure(dom, extension_predicates(ws, G), f, denote=denote, env=env)


def expected_separation(ws, G, a: Name, phi: Formula, params, beta) -> HFSet:
    dom = model_of(ws, G, beta)
    body = _bind(phi, params, 1)
    return HFSet(z for z in interpret(G, a) if _sat(ws, G, dom, body, {"v0": z}))


def expected_replacement(ws, G, phi: Formula, X: Name, params, beta) -> HFSet:
    dom = model_of(ws, G, beta)
    body = _bind(phi, params, 2)
    src = interpret(G, X)
    return HFSet(w for w in dom if any(_sat(ws, G, dom, body, {"v0": z, "v1": w}) for z in src))


def is_function(rel: HFSet) -> tuple[bool, dict]:
    """Whether a set of Kuratowski pairs is a function; returns its graph."""
    graph: dict[HFSet, HFSet] = {}
    for z in rel:
        els = list(z)
        if len(els) == 1:
            (only,) = els
            if len(only) != 1:
                return False, {}
            (a,) = list(only)
            b = a
        elif len(els) == 2:
            small, big = sorted(els, key=len)
            if len(small) != 1 or len(big) != 2 or not small.is_subset(big):
                return False, {}
            (a,) = list(small)
            (b,) = [e for e in big if e is not a]
        else:
            return False, {}
        if graph.get(a, b) is not b:
            return False, {}
        graph[a] = b
    return True, graph


# ---------------------------------------------------------------- suite

SEPARATION_FORMULAS = ("v0 = v0", "v0 in v1", "not(v0 = v1)", "exists v2. v2 in v0", "G(v0)")
REPLACEMENT_FORMULAS = ("v0 = v1", "v1 = check({})", "v0 in v1", "and(v1 in v0, not(v1 = v2))")


def check_zfc(ws: Workspace, G: Ultrafilter, pair_rank: int | None = None, unary_rank: int | None = None,
              limit: int = 400) -> Report:
    """Pairing, union, separation, replacement and choice names under i_G.

    Binary instances (pairing) range over M_pair_rank squared; the unary ones
    over M_unary_rank.  Separation and replacement draw their parameter from
    a stratum one below and cover an evenly spaced selection of at most
    ``limit`` names (all of them when the stratum is small enough).
    """
    top = ws.bounds.max_name_rank
    pr = top if pair_rank is None else pair_rank
    ur = top if unary_rank is None else unary_rank
    bound = f"pairs over M_{pr}, unary over M_{ur}"
    rep = Report("zfc")
    alg = ws.algebra

    def record(claim, inst, lhs, rhs):
        if lhs is rhs:
            rep.checked += 1
        else:
            rep.add(claim, inst, str(lhs), str(rhs), False, bound)

    pnames = ws.stratum(pr).names
    for a, b in cartesian(pnames, repeat=2):
        for claim, name, want in (
            ("pairing", pair_name(ws, a, b), HFSet([interpret(G, a), interpret(G, b)])),
            ("ordered pair", bpair_name(a, b, alg), pair(interpret(G, a), interpret(G, b))),
        ):
            record(claim, f"G={G} {a.literal()} , {b.literal()}", interpret(G, name), want)

    unames = ws.stratum(ur).names
    for s in unames:
        record("union", f"G={G} {s.literal()}", interpret(G, union_name(ws, s)), real_union(interpret(G, s)))
        f = choice_fn_name(s, alg)
        ok, graph = is_function(interpret(G, f))
        covered = set(graph.values()) >= set(interpret(G, s))
        record("choice", f"G={G} {s.literal()}", ok and covered, True)

    step = -(-len(unames) // limit)
    sub = unames[::step]
    pstrat = ws.stratum(max(ur - 1, 0)).names
    preds = ws.predicates
    for text in SEPARATION_FORMULAS:
        phi = parse_formula(text, predicates=preds, algebra=alg)
        plist = [()] if "v1" not in free_vars(phi) else [(p,) for p in pstrat]
        for params in plist:
            for a in sub:
                if a.rank > ur:
                    continue
                got = interpret(G, separation_name(ws, a, phi, params, ur))
                want = expected_separation(ws, G, a, phi, params, ur)
                record("separation", f"G={G} {text} {[p.literal() for p in params]} {a.literal()}", got, want)
    for text in REPLACEMENT_FORMULAS:
        phi = parse_formula(text, predicates=preds, algebra=alg)
        plist = [()] if "v2" not in free_vars(phi) else [(p,) for p in pstrat]
        for params in plist:
            for X in sub:
                got = interpret(G, replacement_image_name(ws, phi, X, params, ur))
                want = expected_replacement(ws, G, phi, X, params, ur)
                record("replacement", f"G={G} {text} {[p.literal() for p in params]} {X.literal()}", got, want)
    if not rep.violations:
        rep.add("zfc instances", f"G={G}", f"{rep.checked} instances", "all interpreted correctly", True, bound)
    return rep
