"""Ultrafilter quotients of the name space and their comparison with M[G]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..boolean_algebra import Ultrafilter
from ..errors import BoundsError, InputError
from ..formula_lang import Formula, to_text
from ..ground_universe import HFSet
from ..names import Name
from ..report import Report
from .tables import mask_dtype
from .values import interpret, truth_in_extension, value_qf
from .workspace import Workspace

STAR, INDUCED = "star", "induced"


def pair_tables(ws: Workspace, names: Sequence[Name], mode: str = INDUCED) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of ||x = y|| and ||x ∈ y|| (bitmasks) over a list of names."""
    names = list(names)
    n = len(names)
    dt = mask_dtype(len(ws.algebra.atoms))
    if mode == STAR:
        full = ws.algebra.full_mask
        eq = np.zeros((n, n), dtype=dt)
        mem = np.zeros((n, n), dtype=dt)
        for i, x in enumerate(names):
            for j, y in enumerate(names):
                if x is y:
                    eq[i, j] = full
                b = y.get(x)
                if b is not None:
                    mem[i, j] = b.mask
        return eq, mem
    if mode != INDUCED:
        raise InputError(f"unknown quotient mode {mode!r}")
    r = max((x.rank for x in names), default=0)
    if r <= ws.bounds.max_name_rank:
        try:
            tb = ws.tables(r)
        except BoundsError:  # stratum over its cap; fall back to recursion
            tb = None
        if tb is not None:
            idx = np.array([tb.index[x] for x in names], dtype=np.int64)
            grid = np.ix_(idx, idx)
            return tb.eq[grid], tb.mem[grid]
    c = ws.cache
    eq = np.array([[c.equal(x, y) for y in names] for x in names], dtype=dt).reshape(n, n)
    mem = np.array([[c.member(x, y) for y in names] for x in names], dtype=dt).reshape(n, n)
    return eq, mem


@dataclass
class QuotientModel:
    mode: str
    ultrafilter: Ultrafilter
    names: tuple[Name, ...]
    #: class index of each name
    class_of: tuple[int, ...]
    classes: tuple[tuple[Name, ...], ...]
    #: E[i, j]: class i is a member of class j
    E: np.ndarray
    #: raw G-truth of ≡ and of membership between names
    same: np.ndarray
    member: np.ndarray

    @property
    def relation(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.E))]

    def extension_of(self, j: int) -> frozenset[int]:
        return frozenset(int(i) for i in np.nonzero(self.E[:, j])[0])


def quotient_model(ws: Workspace, F: Ultrafilter, names: Sequence[Name], mode: str = INDUCED) -> QuotientModel:
    """Names modulo ||x = y|| ∈ F, with [x] E [y] iff ||x ∈ y|| ∈ F.

    Classes are formed greedily by the first representative; the checks in
    :func:`check_well_defined` confirm this does not depend on that choice.
    """
    names = tuple(dict.fromkeys(names))
    if F.algebra != ws.algebra:
        raise InputError("ultrafilter over a different algebra")
    eq, mem = pair_tables(ws, names, mode)
    same = ((eq >> F.bit) & 1).astype(bool)
    member = ((mem >> F.bit) & 1).astype(bool)
    reps: list[int] = []
    class_of = []
    for i in range(len(names)):
        for c, r in enumerate(reps):
            if same[i, r]:
                class_of.append(c)
                break
        else:
            class_of.append(len(reps))
            reps.append(i)
    classes = [[] for _ in reps]
    for i, c in enumerate(class_of):
        classes[c].append(names[i])
    r = np.array(reps, dtype=np.int64)
    E = member[np.ix_(r, r)] if len(r) else np.zeros((0, 0), dtype=bool)
    return QuotientModel(mode, F, names, tuple(class_of), tuple(tuple(c) for c in classes), E, same, member)


def check_well_defined(q: QuotientModel) -> Report:
    """≡ is an equivalence and E does not depend on representatives."""
    rep = Report(f"quotient-{q.mode}")
    co = np.array(q.class_of, dtype=np.int64)
    n = len(co)
    by_class = co[:, None] == co[None, :]
    rep.add("equivalence", f"names={n} G={q.ultrafilter}", "≡ under G", "same class", bool(np.array_equal(q.same, by_class)))
    lifted = q.E[np.ix_(co, co)] if n else q.member
    rep.add("E well defined", f"names={n} G={q.ultrafilter}", "membership of names", "E on classes",
            bool(np.array_equal(q.member, lifted)))
    return rep


def check_extensionality(q: QuotientModel) -> Report:
    """Distinct classes must differ in their E-extensions (inside the carrier)."""
    rep = Report(f"ext-{q.mode}")
    seen: dict[frozenset, int] = {}
    for j in range(len(q.classes)):
        ext = q.extension_of(j)
        if ext in seen:
            a, b = q.classes[seen[ext]][0], q.classes[j][0]
            rep.add("extensionality", f"{q.mode} G={q.ultrafilter} [{a.literal()}] vs [{b.literal()}]",
                    f"same members {sorted(ext)}", "distinct classes", False)
        else:
            seen[ext] = j
    rep.checked += len(q.classes)
    if not rep.violations:
        rep.add("extensionality", f"{q.mode} G={q.ultrafilter} classes={len(q.classes)}", "distinct extensions",
                "distinct classes", True)
    return rep


def images(G: Ultrafilter, names: Sequence[Name]) -> list[HFSet]:
    return [interpret(G, x) for x in names]


def check_isomorphism(ws: Workspace, G: Ultrafilter, names: Sequence[Name]) -> Report:
    """[x] ↦ i_G(x) is well defined, injective on classes, and E matches real ∈."""
    q = quotient_model(ws, G, names, INDUCED)
    rep = Report("iso")
    imgs = images(G, q.names)
    distinct = sorted(set(imgs))
    code = {s: k for k, s in enumerate(distinct)}
    ids = np.array([code[s] for s in imgs], dtype=np.int64)
    real_eq = ids[:, None] == ids[None, :]
    small = np.array([[a in b for b in distinct] for a in distinct], dtype=bool).reshape(len(distinct), len(distinct))
    real_in = small[np.ix_(ids, ids)]
    inst = f"names={len(q.names)} G={G}"
    bad = np.argwhere(q.same != real_eq)
    rep.add("well defined and injective", inst, "||x=y|| in G", "i_G(x) = i_G(y)", not len(bad))
    if len(bad):
        i, j = bad[0]
        rep.add("well defined and injective", f"{q.names[i].literal()} , {q.names[j].literal()}",
                bool(q.same[i, j]), bool(real_eq[i, j]), False)
    bad = np.argwhere(q.member != real_in)
    rep.add("E matches real membership", inst, "||x∈y|| in G", "i_G(x) ∈ i_G(y)", not len(bad))
    if len(bad):
        i, j = bad[0]
        rep.add("E matches real membership", f"{q.names[i].literal()} , {q.names[j].literal()}",
                bool(q.member[i, j]), bool(real_in[i, j]), False)
    rep.note("image size", inst, len(q.classes), len(distinct))
    return rep


def check_forcing_theorem(ws: Workspace, G: Ultrafilter, sentences: Sequence[Formula]) -> Report:
    """M[G] ⊨ s iff ||s|| ∈ G, sentence by sentence."""
    rep = Report("forcing-theorem")
    for s in sentences:
        lhs = truth_in_extension(ws, G, s)
        rhs = value_qf(ws, s) in G
        if lhs != rhs:
            rep.add("forcing theorem", f"G={G} {to_text(s)}", lhs, rhs, False)
        else:
            rep.checked += 1
    if not rep.violations:
        rep.add("forcing theorem", f"G={G} sentences={len(sentences)}", "M[G] truth", "value in G", True)
    return rep
