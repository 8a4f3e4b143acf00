"""Check suites over a workspace; each returns a :class:`Report`.

Suites are exhaustive over the strata the workspace bounds allow.  Where a
claim about all sentences is reduced to a finite computation, the report
says how.
"""

from __future__ import annotations

import random
from typing import Sequence

import numpy as np

from ..boolean_algebra import Ultrafilter, all_families, check_m_complete, enumerate_ultrafilters, mk_powerset_algebra
from ..formula_lang import (
    BigAnd,
    BigOr,
    Eq,
    Exists,
    In,
    NameConst,
    Not,
    Pred,
    Var,
    enumerate_formulas,
    is_quantifier_free,
    to_text,
)
from ..ground_universe import EMPTY, build_hf_universe
from ..names import EMPTY_NAME, Name, check_name, mk_name
from ..report import Report
from . import firstorder as fo
from .constructions import check_zfc
from .quotient import INDUCED, STAR, check_extensionality, check_forcing_theorem, check_isomorphism, check_well_defined, images, quotient_model
from .values import extension_predicates, interpret, value_star
from .workspace import Workspace


def _ultrafilters(ws: Workspace, G: Ultrafilter | None) -> list[Ultrafilter]:
    return [G] if G is not None else ws.ultrafilters()


def _bits(arr: np.ndarray, bit: int) -> np.ndarray:
    return ((arr >> bit) & 1).astype(bool)


def _bool_mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


# ---------------------------------------------------------------- BVM laws

def bvm_laws(ws: Workspace, alpha: int | None = None, sample: int = 2000, seed: int = 0) -> Report:
    """Laws 1-4 for the induced values over every pair/triple/quadruple of M_α.

    Law 3 (transitivity) and law 4 (congruence of ∈) are quantified over
    all triples and quadruples; per atom of the algebra they become Boolean
    matrix inequalities E·E ≤ E and E·M·E ≤ M.
    """
    a = ws.bounds.max_name_rank if alpha is None else alpha
    tb = ws.tables(a)
    rep = Report("bvm-laws")
    bound = f"all names of rank <= {a} ({tb.n} names, {len(ws.algebra.atoms)} atoms)"
    full = ws.algebra.full_mask
    diag = np.diagonal(tb.eq)
    rep.add("law1 ||x=x|| = 1", f"M_{a}", int((diag != full).sum()), 0, bool((diag == full).all()), bound)
    asym = int((tb.eq != tb.eq.T).sum())
    rep.add("law2 symmetry", f"M_{a}", asym, 0, asym == 0, bound)
    t_bad = m_bad = 0
    for bit in range(len(ws.algebra.atoms)):
        E, M = tb.eq_bits[bit], tb.mem_bits[bit]
        t_bad += int((_bool_mm(E, E) & ~E).sum())
        m_bad += int((_bool_mm(_bool_mm(E, M), E) & ~M).sum())
    rep.add("law3 transitivity", f"M_{a} all triples", t_bad, 0, t_bad == 0, bound)
    rep.add("law4 membership congruence", f"M_{a} all quadruples", m_bad, 0, m_bad == 0, bound)
    # the tables against the memoized recursion
    rng = random.Random(seed)
    n = tb.n
    pairs = [(i, j) for i in range(n) for j in range(n)] if n * n <= sample else [
        (rng.randrange(n), rng.randrange(n)) for _ in range(sample)]
    bad = [(i, j) for i, j in pairs
           if tb.eq[i, j] != ws.cache.equal(tb.names[i], tb.names[j])
           or tb.mem[i, j] != ws.cache.member(tb.names[i], tb.names[j])]
    rep.add("tables agree with recursion", f"M_{a} pairs={len(pairs)}", len(bad), 0, not bad, bound)
    return rep


# ---------------------------------------------------------------- Łoś / forcing theorem

def _atom_profiles(ws: Workspace, Gs: Sequence[Ultrafilter], alpha: int) -> tuple[set, Report]:
    """Realized (value, quotient truths, M[G] truths) of atomic sentences over M_α.

    Also checks each atomic instance directly.
    """
    tb = ws.tables(alpha)
    ev = ws.evaluator(alpha)
    nb = len(ws.algebra.atoms)
    rep = Report("los-atomic")
    codes_eq = tb.eq.astype(np.int64)
    codes_in = tb.mem.astype(np.int64)
    pred_codes = {p: ev._vector("pred", p).astype(np.int64) for p in ws.predicates}
    for g, G in enumerate(Gs):
        q = quotient_model(ws, G, tb.names, INDUCED)
        co = np.array(q.class_of, dtype=np.int64)
        q_eq = co[:, None] == co[None, :]
        q_in = q.E[np.ix_(co, co)]
        imgs = images(G, tb.names)
        distinct = sorted(set(imgs))
        code = {s: k for k, s in enumerate(distinct)}
        ids = np.array([code[s] for s in imgs], dtype=np.int64)
        small = np.array([[x in y for y in distinct] for x in distinct], dtype=bool).reshape(len(distinct), -1)
        m_eq = ids[:, None] == ids[None, :]
        m_in = small[np.ix_(ids, ids)]
        val_eq, val_in = _bits(tb.eq, G.bit), _bits(tb.mem, G.bit)
        inst = f"G={G} M_{alpha}"
        for claim, qv, mv, vv in (("x = y", q_eq, m_eq, val_eq), ("x in y", q_in, m_in, val_in)):
            rep.add(f"quotient truth iff value in G: {claim}", inst, int((qv != vv).sum()), 0, bool(np.array_equal(qv, vv)))
            rep.add(f"M[G] truth iff value in G: {claim}", inst, int((mv != vv).sum()), 0, bool(np.array_equal(mv, vv)))
        codes_eq |= (q_eq.astype(np.int64) << (nb + g)) | (m_eq.astype(np.int64) << (nb + len(Gs) + g))
        codes_in |= (q_in.astype(np.int64) << (nb + g)) | (m_in.astype(np.int64) << (nb + len(Gs) + g))
        ext = extension_predicates(ws, G)
        for p in ws.predicates:
            vv = _bits(ev._vector("pred", p), G.bit)
            mv = np.array([s in ext[p] for s in imgs], dtype=bool)
            # the quotient predicate holds of a class iff it holds of its representative
            reps = np.array([q.names.index(c[0]) for c in q.classes], dtype=np.int64)
            qv = vv[reps][co]
            rep.add(f"quotient truth iff value in G: {p}(x)", inst, int((qv != vv).sum()), 0, bool(np.array_equal(qv, vv)))
            rep.add(f"M[G] truth iff value in G: {p}(x)", inst, int((mv != vv).sum()), 0, bool(np.array_equal(mv, vv)))
            pred_codes[p] = pred_codes[p] | (qv.astype(np.int64) << (nb + g)) | (mv.astype(np.int64) << (nb + len(Gs) + g))
    profiles = set(np.unique(codes_eq).tolist()) | set(np.unique(codes_in).tolist())
    for p in ws.predicates:
        profiles |= set(np.unique(pred_codes[p]).tolist())
    return profiles, rep


def los(ws: Workspace, G: Ultrafilter | None = None, alpha: int | None = None, max_size: int = 6) -> Report:
    """Quotient truth ⟺ value ∈ G, and M[G] truth ⟺ value ∈ G, for q.f. sentences.

    Atomic sentences over M_α are checked one by one.  A compound sentence's
    value and truths are functions of those of its atoms, so all sentences of
    size ≤ ``max_size`` are covered by closing the set of realized atomic
    profiles under ¬ and finite ∧/∨ and checking every reachable profile.
    """
    a = ws.bounds.max_name_rank if alpha is None else alpha
    Gs = _ultrafilters(ws, G)
    nb, k = len(ws.algebra.atoms), len(Gs)
    profiles, rep = _atom_profiles(ws, Gs, a)
    rep.suite = "los"
    vmask = (1 << nb) - 1
    tmask = (1 << k) - 1
    full_code = vmask | (tmask << nb) | (tmask << (nb + k))

    def unpack(c):
        return c & vmask, (c >> nb) & tmask, (c >> (nb + k)) & tmask

    # size-indexed closure; empty ∧ and ∨ are the size-1 constants
    by_size: dict[int, set] = {1: set(profiles) | {full_code, 0}}
    lists_and: dict[int, set] = {0: {full_code}}
    lists_or: dict[int, set] = {0: {0}}

    def fold(store, total, op):
        if total not in store:
            out = set()
            for s in range(1, total + 1):
                for f in by_size.get(s, ()):
                    for r in fold(store, total - s, op):
                        out.add(op(f, r))
            store[total] = out
        return store[total]

    for s in range(2, max_size + 1):
        level = {full_code ^ c for c in by_size[s - 1]}
        level |= fold(lists_and, s - 1, lambda x, y: x & y)
        level |= fold(lists_or, s - 1, lambda x, y: x | y)
        by_size[s] = level
    reach = set().union(*by_size.values())
    bad = []
    for c in sorted(reach):
        v, qt, mt = unpack(c)
        for g, Gi in enumerate(Gs):
            want = (v >> Gi.bit) & 1
            if (qt >> g) & 1 != want or (mt >> g) & 1 != want:
                bad.append((c, str(Gi)))
    tb = ws.tables(a)
    rep.add("q.f. sentences: truth iff value in G", f"size<={max_size} over M_{a} ({tb.n} names), G in {[str(g) for g in Gs]}",
            f"{len(reach)} reachable profiles from {len(profiles)} atomic", f"{len(bad)} inconsistent", not bad,
            "every q.f. sentence up to the size bound, via atomic profiles")
    # a literal run of the forcing theorem on explicit sentences for cross-checking
    consts = [NameConst(x) for x in ws.stratum(min(a, 1)).names]
    sents = list(enumerate_formulas(3, consts, ws.predicates, max_arity=2))
    for Gi in Gs:
        rep.extend(check_forcing_theorem(ws, Gi, sents))
    return rep


# ---------------------------------------------------------------- witness hypothesis

def witness(ws: Workspace, max_atoms: int = 3) -> Report:
    """Principal ultrafilters: a finite sum in G has a summand in G, over all families."""
    rep = Report("witness")
    algs = [mk_powerset_algebra([f"a{i}" for i in range(n)]) for n in range(1, max_atoms + 1)]
    if len(ws.algebra.atoms) <= max_atoms:
        algs.append(ws.algebra)
    for alg in algs:
        fams = list(all_families(alg))
        for u in enumerate_ultrafilters(alg):
            bad = check_m_complete(u, fams).violations
            rep.add("sum in G has a summand in G", f"atoms={list(alg.atoms)} G={u} families={len(fams)}",
                    len(bad), 0, not bad, f"all families, atoms <= {max_atoms}")
    return rep


# ---------------------------------------------------------------- check names

def check_names(ws: Workspace, rank_bound: int = 4) -> Report:
    rep = Report("check-names")
    for G in ws.ultrafilters():
        bad = [x for x in build_hf_universe(rank_bound).members if interpret(G, check_name(x, ws.algebra)) is not x]
        rep.add("i_G(check(x)) = x", f"G={G} rank<{rank_bound}", len(bad), 0, not bad, f"all sets of rank < {rank_bound}")
    return rep


# ---------------------------------------------------------------- isomorphism / extensionality

def iso(ws: Workspace, G: Ultrafilter | None = None) -> Report:
    rep = Report("iso")
    for Gi in _ultrafilters(ws, G):
        for a in range(ws.bounds.max_name_rank + 1):
            names = ws.stratum(a).names
            rep.extend(check_isomorphism(ws, Gi, names))
            rep.extend(check_well_defined(quotient_model(ws, Gi, names, INDUCED)))
    return rep


def star_pair(ws: Workspace) -> tuple[Name, Name]:
    """The empty name and {∅̌ ↦ 0}: literal equality 0, induced equality 1."""
    return EMPTY_NAME, mk_name({check_name(EMPTY, ws.algebra): ws.algebra.zero})


def ext(ws: Workspace, G: Ultrafilter | None = None) -> Report:
    rep = Report("ext")
    x, y = star_pair(ws)
    s = Eq(NameConst(x), NameConst(y))
    star_v = value_star(ws, s)
    ind_v = ws.algebra.from_mask(ws.cache.equal(x, y))
    rep.add("star/induced gap", f"{x.literal()} = {y.literal()}", f"star={star_v} induced={ind_v}", "star=[] induced=1",
            star_v.is_zero and ind_v.is_one)
    for Gi in _ultrafilters(ws, G):
        for a in range(ws.bounds.max_name_rank + 1):
            rep.extend(check_extensionality(quotient_model(ws, Gi, ws.stratum(a).names, INDUCED)))
        sub = check_extensionality(quotient_model(ws, Gi, [x, y], STAR))
        first = sub.first_violation()
        rep.add("star quotient violates extensionality", f"G={Gi} {{{x.literal()}, {y.literal()}}}",
                first.instance if first else "no violation", "violation", first is not None)
    return rep


# ---------------------------------------------------------------- first-order stability

def fo_sentences(ws: Workspace, count_min: int = 50) -> list:
    """A deterministic suite of quantified sentences with constants of rank <= 1."""
    consts = [NameConst(c) for c in ws.stratum(1).names]
    x, y = Var("x"), Var("y")
    out = []
    for c in consts:
        out += [Exists("x", In(x, c)), Exists("x", In(c, x)), Exists("x", Eq(x, c)),
                Not(Exists("x", Not(In(x, c)))), Exists("x", BigAnd((In(x, c), Not(Eq(x, c))))),
                Exists("x", BigOr((Eq(x, c), In(c, x)))), Exists("x", BigAnd((In(x, c), In(c, x))))]
    for c in consts[:3]:
        out += [Exists("x", Exists("y", BigAnd((In(y, x), In(x, c))))),
                Exists("x", BigAnd((In(c, x), Not(Exists("y", In(y, x)))))),
                Exists("x", Not(Exists("y", BigAnd((In(y, x), Not(In(y, c)))))))]
    for p in ws.predicates:
        out += [Exists("x", Pred(p, x)), Exists("x", BigAnd((Pred(p, x), In(x, consts[-1]))))]
    out += [Exists("x", Eq(x, x)), Exists("x", Not(Eq(x, x))), Exists("x", Not(Exists("y", In(y, x)))),
            Exists("x", Exists("y", In(x, y))), Not(Exists("x", In(x, x))),
            Exists("x", Exists("y", BigAnd((In(x, y), Not(Exists("z", In(Var("z"), x)))))))]
    return out


def fo_stable(ws: Workspace, seed: int = 0, trials: int = 3) -> Report:
    """Stability of first-order values under enlarging the witness set.

    For each sentence: α_φ is the least stratum from which the value stays
    the same through the top stratum; then the value over random witness sets
    C with M_α_φ ⊆ C ⊆ M_top must equal it as well.
    """
    top = ws.bounds.max_name_rank
    rep = Report("fo-stable")
    rng = random.Random(seed)
    sents = fo_sentences(ws)
    n_top = ws.tables(top).n
    below_top = 0
    for f in sents:
        start = fo.constant_rank(ws, f)
        v = fo.value_fo(ws, f, start)
        vals = v.by_stratum
        stable_from = start + min(i for i in range(len(vals)) if all(w == vals[-1] for w in vals[i:]))
        below_top += stable_from < top
        ok = True
        lo = ws.tables(stable_from).n
        for _ in range(trials):
            extra = rng.sample(range(lo, n_top), rng.randrange(0, n_top - lo + 1)) if n_top > lo else []
            if fo.value_over(ws, f, top, list(range(lo)) + extra) != vals[-1]:
                ok = False
        rep.add("value unchanged on enlarging witnesses", to_text(f), f"stable from M_{stable_from}: {vals[-1]}",
                f"same over {trials} random C between M_{stable_from} and M_{top}", ok, f"strata {start}..{top}")
    rep.note("suite size", f"sentences={len(sents)}", f"{below_top} stabilize below M_{top}", None, f"strata 0..{top}")
    return rep


# ---------------------------------------------------------------- reflection

def reflect(ws: Workspace, G: Ultrafilter | None = None, max_size: int = 3) -> Report:
    rep = Report("reflect")
    top = ws.bounds.max_name_rank
    terms = [Var("x0"), Var("x1")]
    forms = list(enumerate_formulas(max_size, terms, (), ("x0", "x1")))
    qf = [f for f in forms if is_quantifier_free(f)]
    quant = [f for f in forms if not is_quantifier_free(f)]
    for Gi in _ultrafilters(ws, G):
        bad = [(f, a) for f in qf for a in range(top + 1) if not fo.reflects(ws, Gi, f, a)]
        rep.add("q.f. formulas reflect everywhere", f"G={Gi} formulas={len(qf)}", len(bad), 0, not bad, f"strata 0..{top}")
        bad_not = bad_and = 0
        for f in quant:
            for a in range(top + 1):
                r = fo.reflects(ws, Gi, f, a)
                bad_not += fo.reflects(ws, Gi, Not(f), a) != r
                for g in quant[:8]:
                    bad_and += fo.reflects(ws, Gi, BigAnd((f, g)), a) != (r and fo.reflects(ws, Gi, g, a))
        rep.add("negation closure", f"G={Gi} formulas={len(quant)}", bad_not, 0, bad_not == 0, f"strata 0..{top}")
        rep.add("conjunction closure", f"G={Gi} formulas={len(quant)}", bad_and, 0, bad_and == 0, f"strata 0..{top}")
        found = fo.find_nonreflecting(ws, Gi)
        rep.add("non-reflecting formula exhibited", f"G={Gi}",
                f"{to_text(found[0])} at M_{found[1]}" if found else "none found", "a counterexample",
                found is not None, f"strata 0..{top}, ordinals re-scoped")
    return rep


def star_complete(ws: Workspace, G: Ultrafilter | None = None) -> Report:
    rep = Report("star-complete")
    for Gi in _ultrafilters(ws, G):
        rep.extend(fo.check_star_complete(ws, Gi))
    return rep


def zfc(ws: Workspace, G: Ultrafilter | None = None) -> Report:
    rep = Report("zfc")
    pr = ws.bounds.max_name_rank if ws.tables(ws.bounds.max_name_rank).n <= 100 else max(ws.bounds.max_name_rank - 1, 0)
    for Gi in _ultrafilters(ws, G):
        rep.extend(check_zfc(ws, Gi, pair_rank=pr))
    return rep


SUITES = {
    "bvm-laws": lambda ws, G: bvm_laws(ws),
    "los": los,
    "iso": iso,
    "ext": ext,
    "reflect": reflect,
    "star-complete": star_complete,
    "witness": lambda ws, G: witness(ws),
    "check-names": lambda ws, G: check_names(ws),
    "fo-stable": lambda ws, G: fo_stable(ws),
    "zfc": zfc,
}
