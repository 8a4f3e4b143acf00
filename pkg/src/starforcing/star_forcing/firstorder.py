"""First-order values, stratified values ||·||_α, reflection, completeness.

Every ordinal quantifier the definitions use is cut down to the strata
``0 .. bounds.max_name_rank`` of the workspace; results carry that bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..boolean_algebra import BoolElem, Ultrafilter
from ..errors import BoundsError, InputError
from ..formula_lang import (
    BigAnd,
    BigOr,
    Exists,
    Formula,
    Not,
    Var,
    constants_of,
    enumerate_formulas,
    free_vars,
    is_quantifier_free,
    to_text,
)
from ..names import names_with_domain
from ..report import Report
from .tables import StratumEvaluator
from .values import resolve_term, value_qf
from .workspace import Workspace


def _top(ws: Workspace) -> int:
    return ws.bounds.max_name_rank


def _bound_text(ws: Workspace) -> str:
    return f"strata 0..{_top(ws)}"


def constant_rank(ws: Workspace, f: Formula) -> int:
    return max((resolve_term(ws, t).rank for t in constants_of(f)), default=0)


@dataclass(frozen=True)
class FOValue:
    value: BoolElem
    alpha: int
    #: value with witnesses from stratum alpha, alpha + 1, ..., top
    by_stratum: tuple[BoolElem, ...]
    bound: str

    @property
    def stable(self) -> bool:
        return len(set(self.by_stratum)) == 1


def value_fo(ws: Workspace, f: Formula, alpha: int) -> FOValue:
    """Value of a sentence with every quantifier ranging over the stratum ``alpha``.

    The value is recomputed over every larger stratum within bounds;
    :attr:`FOValue.stable` says whether enlarging the witness set changed it.
    """
    if free_vars(f):
        raise InputError(f"not a sentence: free variables {sorted(free_vars(f))}")
    alg = ws.algebra
    vals = []
    for beta in range(alpha, _top(ws) + 1):
        vals.append(alg.from_mask(ws.evaluator(beta).sentence_value(f)))
    return FOValue(vals[0], alpha, tuple(vals), _bound_text(ws))


def value_over(ws: Workspace, f: Formula, alpha: int, subset) -> BoolElem:
    """Value with quantifiers over an arbitrary subset (indices) of stratum ``alpha``."""
    return ws.algebra.from_mask(StratumEvaluator(ws, alpha, subset).sentence_value(f))


def value_alpha(ws: Workspace, f: Formula, alpha: int, strict: bool = True) -> BoolElem:
    """The stratified value ||f||_α of a sentence whose constants have rank ≤ α.

    With ``strict=False`` higher-rank constants are accepted; the sums still
    range over M_α only.
    """
    r = constant_rank(ws, f)
    if strict and r > alpha:
        raise InputError(f"a parameter of rank {r} is not in stratum {alpha}")
    if is_quantifier_free(f):
        return value_qf(ws, f)
    return ws.algebra.from_mask(ws.evaluator(alpha).sentence_value(f))


# ---------------------------------------------------------------- reflection

def _in_G(arr: np.ndarray, G: Ultrafilter) -> np.ndarray:
    return ((arr >> G.bit) & 1).astype(bool)


def witness_condition(ws: Workspace, G: Ultrafilter, body: Formula, var: str, free: tuple[str, ...],
                      alpha: int, gamma: int) -> bool:
    """Clause (b) of reflection for one γ.

    For all parameters from M_α: a witness b ∈ M_γ with ||body(b)||_γ ∈ G
    forces a witness a ∈ M_α with ||body(a)||_α ∈ G.
    """
    order = (var,) + free
    hi = _in_G(ws.evaluator(gamma).table_for(body, order), G).any(axis=0)
    lo = _in_G(ws.evaluator(alpha).table_for(body, order), G).any(axis=0)
    # M_α is the initial segment of M_γ (strata are sorted by rank first)
    k = ws.tables(alpha).n
    hi = hi[(slice(0, k),) * len(free)] if free else hi
    return bool(np.all(~hi | lo))


def reflects(ws: Workspace, G: Ultrafilter, f: Formula, alpha: int) -> bool:
    """Whether ``f`` reflects in M_α, ordinals bounded by ``bounds.max_name_rank``."""
    top = _top(ws)
    if not 0 <= alpha <= top:
        raise BoundsError(f"stratum {alpha} outside 0..{top}")
    if is_quantifier_free(f):
        return True
    memo = ws.memo("reflects")
    key = (G, f, alpha)
    if key not in memo:
        memo[key] = _reflects(ws, G, f, alpha, top)
    return memo[key]


def _reflects(ws: Workspace, G: Ultrafilter, f: Formula, alpha: int, top: int) -> bool:
    if isinstance(f, Not):
        return reflects(ws, G, f.body, alpha)
    if isinstance(f, (BigAnd, BigOr)):
        return all(reflects(ws, G, p, alpha) for p in f.parts)
    if isinstance(f, Exists):
        body = f.body
        if not reflects(ws, G, body, alpha):
            return False
        free = tuple(sorted(free_vars(f)))
        for beta in range(alpha + 1, top):
            if not any(
                reflects(ws, G, body, gamma) and witness_condition(ws, G, body, f.var, free, alpha, gamma)
                for gamma in range(beta + 1, top + 1)
            ):
                return False
        return True
    raise TypeError(f"not a formula: {f!r}")


def reflection_levels(ws: Workspace, G: Ultrafilter, f: Formula) -> list[int]:
    return [a for a in range(_top(ws) + 1) if reflects(ws, G, f, a)]


def find_nonreflecting(ws: Workspace, G: Ultrafilter, max_size: int = 3,
                       vars_: tuple[str, ...] = ("x0", "x1")) -> tuple[Formula, int] | None:
    """The first ∃-formula (canonical enumeration order) failing to reflect somewhere."""
    terms = [Var(v) for v in vars_]
    for body in enumerate_formulas(max_size - 1, terms, (), ()):
        for v in vars_:
            f = Exists(v, body)
            for a in range(_top(ws)):
                if not reflects(ws, G, f, a):
                    return f, a
    return None


# ---------------------------------------------------------------- completeness

def check_star_complete(ws: Workspace, G: Ultrafilter, max_size: int | None = None,
                        predicates: tuple[str, ...] = ()) -> Report:
    """Both clauses of *forcing completeness, within the workspace bounds.

    Clause 1 reports, per α, the least β such that every name with domain
    M_α equals some name of M_β modulo G.  Clause 2 reports, per formula
    over x0, x1 and per α below the top stratum, the least β > α at which
    the formula reflects.  At the top stratum the ordinal alternation of
    reflection has no room left and holds vacuously; the reports say so.
    """
    top = _top(ws)
    bound = _bound_text(ws)
    rep = Report("star-complete")
    for alpha in range(top):
        dom = ws.stratum(alpha).names
        try:
            cands = names_with_domain(dom, ws.algebra, ws.bounds.max_stratum_size)
        except BoundsError as e:
            rep.note("clause1", f"alpha={alpha}", str(e), None, bound)
            continue
        tb = ws.tables(alpha + 1)
        rows = np.array([tb.index[a] for a in cands], dtype=np.int64)
        hits = _in_G(tb.eq[rows, :], G)
        least = None
        for beta in range(alpha + 2):
            k = ws.tables(beta).n
            if hits[:, :k].any(axis=1).all():
                least = beta
                break
        rep.add("clause1", f"alpha={alpha} names={len(cands)} G={G}", f"least beta={least}", f"beta<={alpha + 1}",
                least is not None, bound)
    size = max_size if max_size is not None else min(ws.bounds.max_formula_size, 4)
    terms = [Var("x0"), Var("x1")]
    n = 0
    for f in enumerate_formulas(size, terms, predicates, ("x0", "x1")):
        if is_quantifier_free(f):
            continue
        n += 1
        for alpha in range(top):
            least = next((b for b in range(alpha + 1, top + 1) if reflects(ws, G, f, b)), None)
            ok = least is not None
            if not ok or least < top:
                rep.add("clause2", f"{to_text(f)} alpha={alpha}", f"least beta={least}", f"beta<={top}", ok, bound)
            else:
                rep.checked += 1
    rep.note("clause2", f"formulas={n} size<={size}", "vacuous at top stratum", None, bound)
    return rep
