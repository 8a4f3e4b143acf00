"""Verification suites for the sentence algebra and the M[H] reconstruction."""

from __future__ import annotations

from itertools import combinations, product as cartesian
from typing import Iterable, Sequence

from ..formula_lang import (
    ATOMIC,
    BigAnd,
    BigOr,
    Eq,
    Exists,
    Formula,
    In,
    NameConst,
    Not,
    Pred,
    Var,
    enumerate_formulas,
    free_vars,
    substitute,
    to_text,
)
from ..report import Report
from ..star_forcing.values import interpret
from .bdd import BFormElem, bform_product, bform_sum, canonical_form
from .semantics import HModel
from .tilde import TildeName
from .translate import Translator


def _bound(model: HModel) -> str:
    b = model.space.bounds
    return f"names_0..names_{b.max_level}, template size <= {b.template_size}, params <= {b.max_params}"


def check_mh_equality(model: HModel, translator: Translator, tildes: Sequence[TildeName] | None = None) -> Report:
    """i_H(t) = i_**H**(I(t)) per tilde name, plus the level and universe comparisons."""
    rep = Report("mh")
    bound = _bound(model)
    H = model.ultrafilter
    for k in range(model.space.bounds.max_level + 1):
        img = model.image_of_level(k)  # asserts i_H[names_k] = L_k
        rep.add("i_H[names] = L", f"{model} k={k}", len(img), len(model.L[k]), set(img) == set(model.L[k]), bound)
    tildes = list(model.space.all_names()) if tildes is None else list(tildes)
    left, right = set(), set()
    equal = 0
    for t in tildes:
        a = model.interpret(t)
        b = interpret(H, translator.translate(t))
        left.add(a)
        right.add(b)
        if a is b:
            equal += 1
        else:
            rep.add("i_H = i_H o I", f"{model} {t}", str(a), str(b), False, bound)
    rep.checked += equal
    rep.add("i_H = i_H o I", f"{model} tildes={len(tildes)}", f"{equal} equal", f"{len(tildes)} compared",
            equal == len(tildes), bound)
    rep.add("assembled universes", f"{model} tildes={len(tildes)}", sorted(map(str, left)),
            sorted(map(str, right)), left == right, bound)
    return rep


# ---------------------------------------------------------------- Asn structure

def check_asn_structure(translator: Translator, sentences: Iterable[tuple[int, Formula]]) -> Report:
    """Asn commutes with the connectives, and the two routes agree."""
    rep = Report("asn")
    tr = translator
    for alpha, f in sentences:
        inst = f"alpha={alpha} {to_text(f)}"
        direct = tr.asn(alpha, f)
        via = canonical_form(tr.asn_sentence(alpha, f))
        ok = direct == via
        if isinstance(f, ATOMIC):
            ok = ok and direct == canonical_form(f)
        elif isinstance(f, Not):
            ok = ok and direct == ~tr.asn(alpha, f.body)
        elif isinstance(f, BigAnd):
            ok = ok and direct == bform_product(tr.asn(alpha, p) for p in f.parts)
        elif isinstance(f, BigOr):
            ok = ok and direct == bform_sum(tr.asn(alpha, p) for p in f.parts)
        elif isinstance(f, Exists):
            ok = ok and direct == bform_sum(
                tr.asn(alpha, _subst(f, a)) for a in tr.space.names(alpha))
        if ok:
            rep.checked += 1
        else:
            rep.add("asn clauses", inst, str(direct), str(via), False)
    if not rep.violations:
        rep.add("asn clauses", f"sentences={rep.checked}", "element route", "sentence route", True)
    return rep


def _subst(f: Exists, a: TildeName) -> Formula:
    return substitute(f.body, {f.var: NameConst(a)})


def asn_sample(translator: Translator, size: int = 3) -> list[tuple[int, Formula]]:
    """Sentences over a few tilde constants from the bottom strata, with one bound variable."""
    sp = translator.space
    out = []
    for alpha in range(1, min(sp.bounds.max_level, 2) + 1):
        consts = [NameConst(t) for t in sp.names(alpha)[:2]]
        for f in enumerate_formulas(size, consts + [Var("y")], sp.predicates, ("y",), max_arity=2):
            if not free_vars(f):
                out.append((alpha, f))
    return out


# ---------------------------------------------------------------- B_form soundness

def _truth(f: Formula, row: dict) -> bool:
    if isinstance(f, ATOMIC):
        return row[f]
    if isinstance(f, Not):
        return not _truth(f.body, row)
    if isinstance(f, BigAnd):
        return all(_truth(p, row) for p in f.parts)
    if isinstance(f, BigOr):
        return any(_truth(p, row) for p in f.parts)
    raise TypeError(f"not quantifier free: {f!r}")


def truth_table(f: Formula, atoms: Sequence[Formula]) -> int:
    """Bit i is the value of ``f`` under the i-th assignment to ``atoms``."""
    bits = 0
    for i in range(1 << len(atoms)):
        row = {a: bool(i >> j & 1) for j, a in enumerate(atoms)}
        if _truth(f, row):
            bits |= 1 << i
    return bits


def sample_atoms(tildes: Sequence[TildeName], n: int, predicates: Sequence[str] = ("H",)) -> list[Formula]:
    """``n`` distinct atomic sentences over the given tilde names."""
    c = [NameConst(t) for t in tildes]
    pool: list[Formula] = []
    for a in c:
        pool += [Eq(a, a), In(a, a)] + [Pred(p, a) for p in predicates]
    for a, b in combinations(c, 2):
        pool += [Eq(a, b), In(a, b), In(b, a)]
    if len(pool) < n:
        raise ValueError("not enough tilde names for the requested atoms")
    return pool[:n]


def check_bform_soundness(atoms: Sequence[Formula], size: int, full_functions_upto: int = 3) -> Report:
    """Canonical forms coincide exactly on propositionally equivalent sentences.

    Every sentence of size ≤ ``size`` over ``atoms`` is compared against its
    truth table.  In addition, for the first ``full_functions_upto`` atoms
    every Boolean function (as a disjunctive normal form) gets its own class.
    """
    rep = Report("bform")
    atoms = list(atoms)
    by_table: dict[int, BFormElem] = {}
    by_elem: dict[BFormElem, int] = {}
    n = 0
    for f in enumerate_formulas(size, (), (), (), max_arity=2, leaves=atoms):
        n += 1
        tt = truth_table(f, atoms)
        e = canonical_form(f)
        if by_table.setdefault(tt, e) != e or by_elem.setdefault(e, tt) != tt:
            rep.add("canonical iff equivalent", to_text(f), str(e), f"table {tt:#x}", False)
        else:
            rep.checked += 1
    rep.add("canonical iff equivalent", f"atoms={len(atoms)} size<={size} sentences={n}",
            f"{len(by_elem)} classes", f"{len(by_table)} truth tables", len(by_elem) == len(by_table))
    k = min(full_functions_upto, len(atoms))
    sub = atoms[:k]
    rows = list(range(1 << k))
    seen: set[BFormElem] = set()
    for tt in range(1 << (1 << k)):
        terms = [BigAnd(tuple(a if r >> j & 1 else Not(a) for j, a in enumerate(sub))) for r in rows if tt >> r & 1]
        e = canonical_form(BigOr(tuple(terms)))
        seen.add(e)
        if e.algebra.sat_count(e.node, [str_key(a) for a in sub]) != bin(tt).count("1"):
            rep.add("model count", f"table {tt:#x}", "diagram count", "table count", False)
    rep.add("all functions distinct", f"atoms={k}", len(seen), 1 << (1 << k), len(seen) == 1 << (1 << k))
    return rep


def str_key(a: Formula) -> str:
    return to_text(a)


def check_h_laws(model: HModel, elems: Sequence[BFormElem], family_size: int = 5) -> Report:
    """Ultrafilter laws for **H** on ``elems`` and M-completeness on all their subfamilies."""
    rep = Report("h-ultrafilter")
    H = model.ultrafilter
    inst = f"{model} elements={len(elems)}"
    for e in elems:
        ok = (e in H) != (~e in H)
        rep.checked += 1
        if not ok:
            rep.add("exactly one of e, -e", f"{model} {e}", e in H, ~e in H, False)
    for e, f in cartesian(elems, repeat=2):
        ok = ((e & f) in H) == (e in H and f in H) and ((e | f) in H) == (e in H or f in H)
        rep.checked += 1
        if not ok:
            rep.add("filter laws", f"{model} {e} {f}", None, None, False)
    fam = list(elems[:family_size])
    for r in range(len(fam) + 1):
        for sub in combinations(fam, r):
            s = bform_sum(sub)
            p = bform_product(sub)
            ok = (s in H) == any(x in H for x in sub) and (p in H) == all(x in H for x in sub)
            rep.checked += 1
            if not ok:
                rep.add("M-completeness", f"{model} family of {r}", s in H, any(x in H for x in sub), False)
    rep.add("ultrafilter and M-completeness", inst, f"{rep.checked} laws", "hold", not rep.violations)
    return rep


def check_h_sums(model: HModel, translator: Translator, sentences: Iterable[tuple[int, Formula]]) -> Report:
    """For each ∃-sentence, the expanded sum is in **H** iff some summand is."""
    rep = Report("h-sums")
    H = model.ultrafilter
    tr = translator
    for alpha, f in sentences:
        if not isinstance(f, Exists):
            continue
        parts = [tr.asn(alpha, _subst(f, a)) for a in tr.space.names(alpha)]
        lhs = tr.asn(alpha, f) in H
        rhs = any(p in H for p in parts)
        if lhs == rhs:
            rep.checked += 1
        else:
            rep.add("sum in H iff a summand is", f"{model} {to_text(f)}", lhs, rhs, False)
    rep.add("sum in H iff a summand is", f"{model} sums={rep.checked}", "sum in H", "summand in H",
            not rep.violations)
    return rep
