"""Boolean values of atomic and quantifier-free sentences, and interpretation.

Two valuations coexist.  The literal one (``value_star``) reads equality off
name identity and membership off the name's own map.  The induced one
(``value_atomic``) is the extensional mutual recursion

    ||x ∈ y|| = Σ_{t ∈ dom y} ||x = t|| · y(t)
    ||x = y|| = Π_{t ∈ dom x} (−x(t) + ||t ∈ y||) · Π_{t ∈ dom y} (−y(t) + ||t ∈ x||)

Every recursive call lowers the pair of ranks in the canonical order of
pairs, which is what makes the recursion well founded.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from ..boolean_algebra import BoolAlg, BoolElem
from ..errors import InputError
from ..formula_lang import (
    BigAnd,
    BigOr,
    CheckConst,
    Eq,
    Formula,
    In,
    Named,
    NameConst,
    Not,
    Pred,
    SetConst,
    Term,
    Var,
    eval_in_structure,
    is_quantifier_free,
    term_text,
)
from ..ground_universe import HFSet, gamma_index
from ..names import Name, check_name
from .workspace import GENERIC_PREDICATE, Workspace


class ValueCache:
    """Memo of induced atomic values, as bitmasks, keyed by (kind, x, y).

    Values are a pure function of the key, so concurrent writers can only
    store identical entries; the lock just keeps the dict consistent.
    """

    def __init__(self, algebra: BoolAlg, check_gamma: bool = False):
        self.algebra = algebra
        self.full = algebra.full_mask
        self.memo: dict[tuple, int] = {}
        self.lock = threading.Lock()
        self.check_gamma = check_gamma
        self.max_depth = 0

    def __len__(self) -> int:
        return len(self.memo)

    def _store(self, key, value):
        with self.lock:
            self.memo[key] = value
        return value

    def member(self, x: Name, y: Name, _gamma: int | None = None, _depth: int = 0) -> int:
        key = ("in", x, y)
        found = self.memo.get(key)
        if found is not None:
            return found
        g = self._descend(x, y, _gamma, _depth)
        acc = 0
        for t, b in y.items():
            if b.mask:
                acc |= self.equal(x, t, g, _depth + 1) & b.mask
                if acc == self.full:
                    break
        return self._store(key, acc)

    def equal(self, x: Name, y: Name, _gamma: int | None = None, _depth: int = 0) -> int:
        key = ("eq", x, y)
        found = self.memo.get(key)
        if found is not None:
            return found
        g = self._descend(x, y, _gamma, _depth)
        full = self.full
        acc = full
        for t, b in x.items():
            if b.mask:
                acc &= (full ^ b.mask) | self.member(t, y, g, _depth + 1)
                if not acc:
                    break
        if acc:
            for t, b in y.items():
                if b.mask:
                    acc &= (full ^ b.mask) | self.member(t, x, g, _depth + 1)
                    if not acc:
                        break
        return self._store(key, acc)

    def _descend(self, x: Name, y: Name, parent: int | None, depth: int) -> int | None:
        if not self.check_gamma:
            return None
        g = gamma_index(x.rank, y.rank)
        if parent is not None and not g < parent:
            raise AssertionError(f"rank-pair order did not decrease: {parent} -> {g}")
        self.max_depth = max(self.max_depth, depth)
        return g


# ---------------------------------------------------------------- terms

def resolve_term(ws: Workspace, t: Term) -> Name:
    """The name a constant term stands for in the forcing language."""
    if isinstance(t, NameConst):
        if not isinstance(t.value, Name):
            raise InputError(f"{term_text(t)} is not a Boolean-valued name")
        return t.value
    if isinstance(t, CheckConst):
        return check_name(t.value, ws.algebra)
    if isinstance(t, Named):
        if t.ident not in ws.names:
            raise InputError(f"unknown name id {t.ident!r}")
        return ws.names[t.ident]
    if isinstance(t, SetConst):
        raise InputError(f"set constant {term_text(t)} is not a name; write check({t.value})")
    if isinstance(t, Var):
        raise InputError(f"free variable {t.name} in a sentence")
    raise TypeError(f"not a term: {t!r}")


def _require_qf(s: Formula) -> None:
    if not is_quantifier_free(s):
        raise InputError("a quantifier-free sentence is required")


# ---------------------------------------------------------------- literal values

def encode_element(b: BoolElem) -> HFSet:
    """The ground set standing for an algebra element (Ackermann decoding of its mask)."""
    return HFSet.from_code(b.mask)


def generic_check(b: BoolElem) -> Name:
    return check_name(encode_element(b), b.algebra)


def value_star(ws: Workspace, s: Formula) -> BoolElem:
    _require_qf(s)
    alg = ws.algebra

    def ev(f: Formula) -> int:
        if isinstance(f, Eq):
            return alg.full_mask if resolve_term(ws, f.left) is resolve_term(ws, f.right) else 0
        if isinstance(f, In):
            b = resolve_term(ws, f.right).get(resolve_term(ws, f.left))
            return 0 if b is None else b.mask
        if isinstance(f, Pred):
            x = resolve_term(ws, f.arg)
            if f.symbol == GENERIC_PREDICATE:
                return next((b.mask for b in alg.elements() if generic_check(b) is x), 0)
            ext = check_name(ws.enrichment(f.symbol).as_set(), alg)
            b = ext.get(x)
            return 0 if b is None else b.mask
        if isinstance(f, Not):
            return alg.full_mask ^ ev(f.body)
        if isinstance(f, BigAnd):
            acc = alg.full_mask
            for p in f.parts:
                acc &= ev(p)
            return acc
        if isinstance(f, BigOr):
            acc = 0
            for p in f.parts:
                acc |= ev(p)
            return acc
        raise TypeError(f"not a quantifier-free formula: {f!r}")

    return BoolElem(alg, ev(s))


# ---------------------------------------------------------------- induced values

def value_atomic(ws: Workspace, x: Name, y: Name, kind: str) -> BoolElem:
    if kind in ("in", "∈"):
        return BoolElem(ws.algebra, ws.cache.member(x, y))
    if kind in ("eq", "="):
        return BoolElem(ws.algebra, ws.cache.equal(x, y))
    raise InputError(f"unknown atomic kind {kind!r}")


def value_G_pred(ws: Workspace, a: Name) -> BoolElem:
    """||G(a)|| = Σ_b ||a = b̌|| · b over every algebra element b."""
    acc = 0
    for b in ws.algebra.elements():
        if b.mask:
            acc |= ws.cache.equal(a, generic_check(b)) & b.mask
    return BoolElem(ws.algebra, acc)


def value_pred(ws: Workspace, symbol: str, a: Name) -> BoolElem:
    if symbol == GENERIC_PREDICATE:
        return value_G_pred(ws, a)
    ext = check_name(ws.enrichment(symbol).as_set(), ws.algebra)
    return BoolElem(ws.algebra, ws.cache.member(a, ext))


def atomic_mask(ws: Workspace, f: Formula, resolve=None) -> int:
    resolve = resolve or (lambda t: resolve_term(ws, t))
    if isinstance(f, Eq):
        return ws.cache.equal(resolve(f.left), resolve(f.right))
    if isinstance(f, In):
        return ws.cache.member(resolve(f.left), resolve(f.right))
    if isinstance(f, Pred):
        return value_pred(ws, f.symbol, resolve(f.arg)).mask
    raise TypeError(f"not atomic: {f!r}")


def value_qf(ws: Workspace, s: Formula) -> BoolElem:
    """Homomorphic extension of the induced atomic values."""
    _require_qf(s)
    full = ws.algebra.full_mask

    def ev(f: Formula) -> int:
        if isinstance(f, (Eq, In, Pred)):
            return atomic_mask(ws, f)
        if isinstance(f, Not):
            return full ^ ev(f.body)
        if isinstance(f, BigAnd):
            acc = full
            for p in f.parts:
                acc &= ev(p)
            return acc
        if isinstance(f, BigOr):
            acc = 0
            for p in f.parts:
                acc |= ev(p)
            return acc
        raise TypeError(f"not a quantifier-free formula: {f!r}")

    return BoolElem(ws.algebra, ev(s))


# ---------------------------------------------------------------- interpretation

@lru_cache(maxsize=None)
def interpret(G, a: Name) -> HFSet:
    """i_G(a) = { i_G(t) : t ∈ dom a, a(t) ∈ G }."""
    return HFSet(interpret(G, t) for t, b in a.items() if b in G)


def generic_extension(G) -> frozenset[HFSet]:
    """Interpretation of the predicate G in the extension: codes of members of G."""
    return frozenset(encode_element(b) for b in G.algebra.elements() if b in G)


def extension_predicates(ws: Workspace, G) -> dict[str, frozenset]:
    preds = {e.predicate_name: e.extension for e in ws.enrichments}
    preds[GENERIC_PREDICATE] = generic_extension(G)
    return preds


def truth_in_extension(ws: Workspace, G, s: Formula) -> bool:
    """Truth of a quantifier-free sentence in M[G] (real ∈ on interpretations)."""
    _require_qf(s)
    from ..formula_lang import constants_of

    denote = lambda t: interpret(G, resolve_term(ws, t))
    dom = {denote(t) for t in constants_of(s)}
    return eval_in_structure(dom, extension_predicates(ws, G), s, denote=denote)
