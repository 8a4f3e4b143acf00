"""Asn_α and the translation I of tilde names into B_form-valued names.

Both depend on the enumerated strata only, never on H, so one translation
serves every H.  Asn has two routes that must agree: :func:`asn_sentence`
expands quantifiers into disjunctions and returns a quantifier-free
sentence; :func:`asn` computes its class in B_form directly.
"""

from __future__ import annotations

from ..errors import InputError
from ..formula_lang import ATOMIC, BigAnd, BigOr, Exists, Formula, NameConst, Not, free_vars, substitute
from ..names import EMPTY_NAME, Name
from .bdd import BFormElem, bform_complement, bform_product, bform_sum, canonical_form
from .tilde import EMPTY_TILDE, TildeName, TildeSpace


class Translator:
    """Memoised Asn_α and I over one :class:`TildeSpace`."""

    def __init__(self, space: TildeSpace):
        self.space = space
        self._asn: dict[tuple[int, Formula], BFormElem] = {}
        self._I: dict[TildeName, Name] = {EMPTY_TILDE: EMPTY_NAME}
        self.collisions = 0

    def __repr__(self) -> str:
        return f"Translator({self.space!r}, memo={len(self._asn)})"

    @staticmethod
    def _require_sentence(f: Formula) -> None:
        fv = free_vars(f)
        if fv:
            raise InputError(f"Asn takes sentences; free variables {sorted(fv)}")

    def asn(self, alpha: int, f: Formula) -> BFormElem:
        """The class Asn_α(f^α), quantifiers expanded over names_α."""
        self._require_sentence(f)
        return self._asn_elem(alpha, f)

    def _asn_elem(self, alpha: int, f: Formula) -> BFormElem:
        key = (alpha, f)
        got = self._asn.get(key)
        if got is not None:
            return got
        if isinstance(f, ATOMIC):
            got = canonical_form(f)
        elif isinstance(f, Not):
            got = bform_complement(self._asn_elem(alpha, f.body))
        elif isinstance(f, BigAnd):
            got = bform_product(self._asn_elem(alpha, p) for p in f.parts)
        elif isinstance(f, BigOr):
            got = bform_sum(self._asn_elem(alpha, p) for p in f.parts)
        elif isinstance(f, Exists):
            got = bform_sum(self._asn_elem(alpha, substitute(f.body, {f.var: NameConst(a)}))
                            for a in self.space.names(alpha))
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._asn[key] = got
        return got

    def asn_sentence(self, alpha: int, f: Formula) -> Formula:
        """Asn_α(f^α) as a quantifier-free sentence (∃ becomes a disjunction)."""
        self._require_sentence(f)

        def walk(g: Formula) -> Formula:
            if isinstance(g, ATOMIC):
                return g
            if isinstance(g, Not):
                return Not(walk(g.body))
            if isinstance(g, BigAnd):
                return BigAnd(tuple(walk(p) for p in g.parts))
            if isinstance(g, BigOr):
                return BigOr(tuple(walk(p) for p in g.parts))
            if isinstance(g, Exists):
                return BigOr(tuple(walk(substitute(g.body, {g.var: NameConst(a)}))
                                   for a in self.space.names(alpha)))
            raise TypeError(f"not a formula: {g!r}")

        return walk(f)

    def translate(self, t: TildeName) -> Name:
        """I(t): domain {I(a) : a ∈ names_α}, value Asn_α(φ(a, params)) at I(a).

        When two domain elements translate to the same name their values are
        joined, which is what membership of I(a) in I(t) then means.
        """
        got = self._I.get(t)
        if got is not None:
            return got
        self.space.check_member(t)
        acc: dict[Name, BFormElem] = {}
        for a in self.space.domain(t):
            k = self.translate(a)
            v = self._asn_elem(t.level, t.instance(a))
            if k in acc:
                self.collisions += 1
                acc[k] = acc[k] | v
            else:
                acc[k] = v
        got = Name(acc)
        self._I[t] = got
        return got


def asn(translator: Translator, alpha: int, f: Formula) -> BFormElem:
    return translator.asn(alpha, f)


def translate_I(translator: Translator, t: TildeName) -> Name:
    return translator.translate(t)
