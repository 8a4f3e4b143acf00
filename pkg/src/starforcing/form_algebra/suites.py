"""The mh and bform suites, callable like the other check suites."""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from ..errors import InputError
from ..ground_universe import EnrichmentClass, Universe
from ..report import Report
from ..star_forcing.workspace import Workspace
from .checks import (
    asn_sample,
    check_asn_structure,
    check_bform_soundness,
    check_h_laws,
    check_h_sums,
    check_mh_equality,
    sample_atoms,
)
from .semantics import H_SYMBOL, HModel
from .tilde import TildeBounds, TildeSpace
from .translate import Translator


def space_for(ws: Workspace) -> TildeSpace:
    return TildeSpace(tuple(e.predicate_name for e in ws.enrichments), TildeBounds.from_mapping(ws.tilde_bounds))


def _require_H(ws: Workspace) -> None:
    if H_SYMBOL not in {e.predicate_name for e in ws.enrichments}:
        raise InputError(f"the mh suite needs an enrichment named {H_SYMBOL} in [enrich]")


def mh_report(model: HModel, translator: Translator, extra: Sequence = ()) -> Report:
    rep = check_mh_equality(model, translator, list(model.space.all_names()) + list(extra))
    sample = asn_sample(translator)
    elems = [translator.asn(a, f) for a, f in sample[:40]]
    rep.extend(check_h_laws(model, elems))
    rep.extend(check_h_sums(model, translator, sample))
    return rep


def mh(ws: Workspace, G=None) -> Report:
    """i_H = i_H o I on every enumerated tilde name (and the declared ones), for the workspace's H."""
    _require_H(ws)
    space = space_for(ws)
    tr = Translator(space)
    model = HModel(space, ws.enrichments, ws.universe)
    rep = mh_report(model, tr, [t for _, t in sorted(ws.tildes.items())])
    rep.extend(check_asn_structure(tr, asn_sample(tr)))
    return rep


def every_H(universe: Universe, others: Sequence[EnrichmentClass] = ()) -> Iterator[tuple[EnrichmentClass, ...]]:
    """Enrichment lists with H ranging over every subset of the universe's members."""
    members = universe.members
    for r in range(len(members) + 1):
        for H in combinations(members, r):
            yield (*others, EnrichmentClass(H_SYMBOL, H))


def mh_all(ws: Workspace, G=None) -> Report:
    """The mh suite for every H ⊆ M, sharing one translation."""
    others = tuple(e for e in ws.enrichments if e.predicate_name != H_SYMBOL)
    preds = tuple(e.predicate_name for e in others) + (H_SYMBOL,)
    space = TildeSpace(preds, TildeBounds.from_mapping(ws.tilde_bounds))
    tr = Translator(space)
    rep = Report("mh-all")
    for enr in every_H(ws.universe, others):
        rep.extend(mh_report(HModel(space, enr, ws.universe), tr))
    rep.extend(check_asn_structure(tr, asn_sample(tr)))
    rep.note("translation", f"tildes={len(space.all_names())}", f"key collisions joined={tr.collisions}")
    return rep


def bform(ws: Workspace, G=None, n_atoms: int = 6, size: int = 4) -> Report:
    """Canonical forms against truth tables over ``n_atoms`` atomic sentences."""
    space = space_for(ws) if ws.tilde_bounds else TildeSpace((H_SYMBOL,), TildeBounds(max_level=2))
    tildes = [t for lvl in space.levels for t in lvl][:3]
    preds = space.predicates or (H_SYMBOL,)
    return check_bform_soundness(sample_atoms(tildes, n_atoms, preds[:1]), size)


SUITES = {"mh": mh, "mh-all": mh_all, "bform": bform}
