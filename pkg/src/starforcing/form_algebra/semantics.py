"""The constructible-style hierarchy over M ∪ {H}, and the interpretation i_H."""

from __future__ import annotations

import logging
from typing import Mapping, Sequence

from ..errors import BoundsError, InputError
from ..formula_lang import NameConst, Pred, Eq, In, eval_in_structure, term_text
from ..ground_universe import EMPTY, EnrichmentClass, HFSet, definable_subsets, powerset
from ..star_forcing.workspace import Workspace
from .bdd import FORM_ALGEBRA, FALSE_ID, TRUE_ID, BFormElem
from .tilde import EMPTY_TILDE, TildeBounds, TildeName, TildeSpace, param_var

log = logging.getLogger(__name__)

H_SYMBOL = "H"


def build_L_hierarchy(enrichments: Sequence[EnrichmentClass], alpha_max: int,
                      cross_check: bool = True) -> list[tuple[HFSet, ...]]:
    """L_0, ..., L_alpha_max over the declared enrichments.

    L_{α+1} is the union over the enrichments A (and the bare language) of
    the subsets of L_α definable with an A predicate, parameters from L_α and
    quantifiers over L_α.  Finite levels have no limit stages.
    With ``cross_check`` each level is compared with the powerset of the last.
    """
    if alpha_max < 0:
        raise BoundsError("alpha_max must be non-negative")
    levels: list[tuple[HFSet, ...]] = [()]
    for _ in range(alpha_max):
        U = levels[-1]
        if len(U) > 6:
            raise BoundsError(f"a level of {len(U)} sets is beyond the definability search")
        # an n-fold disjunction of equalities names any subset of an n-set
        size = max(len(U) + 1, 1)
        found: set[frozenset[HFSet]] = set()
        for A in [None, *enrichments]:
            found |= definable_subsets(U, A, size)
        nxt = tuple(sorted(HFSet(s) for s in found))
        if cross_check and set(nxt) != {HFSet(s) for s in powerset(U)}:
            raise AssertionError("definable subsets of a finite level fall short of its powerset")
        levels.append(nxt)
    return levels


class HModel:
    """M[H] cut down to L_0 .. L_max_level, with i_H on an enumerated tilde space.

    ``enrichments`` interpret the predicate symbols; one of them is H.
    """

    def __init__(self, space: TildeSpace, enrichments: Sequence[EnrichmentClass], universe=None):
        self.space = space
        self.enrichments = tuple(enrichments)
        self.preds = {e.predicate_name: e.extension for e in self.enrichments}
        missing = set(space.predicates) - set(self.preds)
        if missing:
            raise InputError(f"no interpretation for predicate(s) {sorted(missing)}")
        if universe is not None:
            for e in self.enrichments:
                e.check_inside(universe)
        self.L = build_L_hierarchy(self.enrichments, space.bounds.max_level)
        self._i: dict[TildeName, HFSet] = {EMPTY_TILDE: EMPTY}
        self._levels_checked: set[int] = set()
        self._atom_truth: dict[str, bool] = {}
        self._node_truth: dict[int, bool] = {FALSE_ID: False, TRUE_ID: True}
        self.ultrafilter = HUltrafilter(self)

    def __repr__(self) -> str:
        return f"HModel({', '.join(f'{k}={HFSet(v)}' for k, v in sorted(self.preds.items()))})"

    @classmethod
    def from_workspace(cls, ws: Workspace, space: TildeSpace | None = None) -> "HModel":
        if space is None:
            space = TildeSpace(tuple(e.predicate_name for e in ws.enrichments),
                               TildeBounds.from_mapping(ws.tilde_bounds))
        return cls(space, ws.enrichments, ws.universe)

    @property
    def H(self) -> HFSet:
        if H_SYMBOL not in self.preds:
            raise InputError(f"no enrichment named {H_SYMBOL}")
        return HFSet(self.preds[H_SYMBOL])

    # ------------------------------------------------------------ i_H
    def image_of_level(self, k: int) -> tuple[HFSet, ...]:
        """i_H[names_k], asserted equal to L_k the first time it is computed."""
        img = tuple(sorted({self.interpret(z) for z in self.space.names(k)}))
        if k not in self._levels_checked:
            if k >= len(self.L):
                raise BoundsError(f"L_{k} was not built")
            if set(img) != set(self.L[k]):
                raise AssertionError(f"i_H[names_{k}] has {len(img)} sets but L_{k} has {len(self.L[k])}")
            self._levels_checked.add(k)
        return img

    def interpret(self, t: TildeName) -> HFSet:
        """i_H(t) = { i_H(z) : i_H[names_α] ⊨ φ(i_H(z), i_H(p1), ...) } for z ∈ names_α."""
        got = self._i.get(t)
        if got is not None:
            return got
        self.space.check_member(t)
        alpha = t.level
        dom = self.image_of_level(alpha)
        env = {param_var(i + 1): self.interpret(p) for i, p in enumerate(t.params)}
        ok = set()
        for x in dom:
            if eval_in_structure(dom, self.preds, t.formula, env={**env, param_var(0): x}):
                ok.add(x)
        got = HFSet(self.interpret(z) for z in self.space.domain(t) if self.interpret(z) in ok)
        self._i[t] = got
        return got

    # ------------------------------------------------------------ atoms of B_form
    def _denote(self, term) -> HFSet:
        if not isinstance(term, NameConst) or not isinstance(term.value, TildeName):
            raise InputError(f"atomic sentences of the sentence algebra mention tilde names, not {term_text(term)}")
        return self.interpret(term.value)

    def atom_truth(self, key: str) -> bool:
        """Truth in M[H] of the atomic sentence keyed ``key``."""
        got = self._atom_truth.get(key)
        if got is None:
            a = FORM_ALGEBRA.atoms[key]
            if isinstance(a, Eq):
                got = self._denote(a.left) is self._denote(a.right)
            elif isinstance(a, In):
                got = self._denote(a.left) in self._denote(a.right)
            elif isinstance(a, Pred):
                if a.symbol not in self.preds:
                    raise InputError(f"no interpretation for predicate {a.symbol}")
                got = self._denote(a.arg) in self.preds[a.symbol]
            else:  # pragma: no cover - the table only holds atoms
                raise TypeError(a)
            self._atom_truth[key] = got
        return got

    def node_truth(self, u: int) -> bool:
        got = self._node_truth.get(u)
        if got is None:
            # iterative post-order so deep diagrams do not hit the recursion limit
            stack = [u]
            nodes = FORM_ALGEBRA.nodes
            while stack:
                w = stack[-1]
                if w in self._node_truth:
                    stack.pop()
                    continue
                var, lo, hi = nodes[w]
                nxt = hi if self.atom_truth(var) else lo
                if nxt in self._node_truth:
                    self._node_truth[w] = self._node_truth[nxt]
                    stack.pop()
                else:
                    stack.append(nxt)
            got = self._node_truth[u]
        return got


class HUltrafilter:
    """The ultrafilter **H** on B_form: [φ] ∈ **H** iff M[H] ⊨ φ.

    Membership is decided semantically: the atoms of the canonical form are
    evaluated under i_H and the diagram is followed.  Hashing is by identity
    so interpretations can be cached per model.
    """

    __slots__ = ("model", "__weakref__")

    def __init__(self, model: HModel):
        self.model = model

    @property
    def algebra(self):
        return FORM_ALGEBRA

    def __contains__(self, e) -> bool:
        if not isinstance(e, BFormElem):
            raise InputError(f"{e!r} is not an element of the sentence algebra")
        return self.model.node_truth(e.node)

    def __str__(self) -> str:
        return f"H[{self.model.H if H_SYMBOL in self.model.preds else '?'}]"

    __repr__ = __str__


def ultrafilter_H(model: HModel) -> HUltrafilter:
    return model.ultrafilter


def interpret_H(t: TildeName, model: HModel) -> HFSet:
    return model.interpret(t)


def level_images(model: HModel) -> Mapping[int, tuple[HFSet, ...]]:
    return {k: model.image_of_level(k) for k in range(model.space.bounds.max_level + 1)}
