"""The bundled desk-scale stand-in for a ground model with a Boolean algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..boolean_algebra import BoolAlg, Ultrafilter, enumerate_ultrafilters
from ..errors import BoundsError, InputError
from ..ground_universe import EnrichmentClass, HFSet, Universe
from ..names import DEFAULT_STRATUM_CAP, Stratum, stratum

GENERIC_PREDICATE = "G"


@dataclass(frozen=True)
class Bounds:
    max_name_rank: int = 2
    max_stratum_size: int = DEFAULT_STRATUM_CAP
    max_formula_size: int = 4
    #: cap on array cells when evaluating quantified formulas over a stratum
    max_cells: int = 20_000_000

    def __post_init__(self):
        for k in ("max_name_rank", "max_stratum_size", "max_formula_size", "max_cells"):
            if getattr(self, k) < 1:
                raise InputError(f"bound {k} must be positive")


@dataclass(eq=False)
class Workspace:
    universe: Universe
    algebra: BoolAlg
    enrichments: tuple[EnrichmentClass, ...] = ()
    bounds: Bounds = field(default_factory=Bounds)
    sets: dict[str, HFSet] = field(default_factory=dict)
    names: dict[str, Any] = field(default_factory=dict)
    tildes: dict[str, Any] = field(default_factory=dict)
    #: generator bounds for definability names (level cap, template size, params)
    tilde_bounds: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for e in self.enrichments:
            e.check_inside(self.universe)
            if e.predicate_name == GENERIC_PREDICATE:
                raise InputError(f"predicate symbol {GENERIC_PREDICATE} is reserved for the generic filter")
            if e.predicate_name in seen:
                raise InputError(f"enrichment {e.predicate_name} declared twice")
            seen.add(e.predicate_name)
        self._cache = None
        self._tables = {}
        self._evaluators = {}
        self._memos: dict[str, dict] = {}

    @property
    def cache(self):
        from .values import ValueCache

        if self._cache is None:
            self._cache = ValueCache(self.algebra)
        return self._cache

    @property
    def predicates(self) -> tuple[str, ...]:
        return tuple(e.predicate_name for e in self.enrichments) + (GENERIC_PREDICATE,)

    def enrichment(self, symbol: str) -> EnrichmentClass:
        for e in self.enrichments:
            if e.predicate_name == symbol:
                return e
        raise InputError(f"unknown predicate symbol {symbol!r}")

    def stratum(self, alpha: int) -> Stratum:
        if alpha < 0 or alpha > self.bounds.max_name_rank:
            raise BoundsError(f"stratum {alpha} outside 0..{self.bounds.max_name_rank}")
        return stratum(self.algebra, alpha, self.bounds.max_stratum_size)

    def tables(self, alpha: int):
        """Exhaustive value tables for the stratum ``alpha`` (built once)."""
        from .tables import StratumTables

        if alpha not in self._tables:
            self._tables[alpha] = StratumTables.build(self, alpha)
        return self._tables[alpha]

    def memo(self, kind: str) -> dict:
        """A per-workspace memo table for derived data."""
        return self._memos.setdefault(kind, {})

    def evaluator(self, alpha: int):
        """Shared array evaluator with quantifiers over the stratum ``alpha``."""
        from .tables import StratumEvaluator

        if alpha not in self._evaluators:
            self._evaluators[alpha] = StratumEvaluator(self, alpha)
        return self._evaluators[alpha]

    def ultrafilters(self) -> list[Ultrafilter]:
        return enumerate_ultrafilters(self.algebra)

    def ultrafilter(self, atom: str) -> Ultrafilter:
        if atom not in self.algebra.atoms:
            raise InputError(f"unknown ultrafilter generator {atom!r}")
        return Ultrafilter(self.algebra, atom)
