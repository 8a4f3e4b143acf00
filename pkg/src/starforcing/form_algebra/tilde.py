"""Definability names ("tilde names") and their bounded generator.

A tilde name of level α is a map on the enumerated stratum names_α given
uniformly by one formula template ``φ(v0, v1, ..., vk)``: the element ã is
sent to ``φ^α(ã, p1, ..., pk)``.  The parameters p1..pk have level < α, so
they lie in names_α.  The empty tilde name (level 0, empty domain) is the
only member of names_1.

names_α itself is never materialised in full (it is a proper class in the
intended setting).  :class:`TildeSpace` enumerates, level by level, every
template up to a size bound and every parameter tuple from the previous
enumerated level; the domain of a level-α name is that enumeration.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Sequence

from ..errors import BoundsError, InputError
from ..formula_lang import FALSE, Formula, NameConst, Var, enumerate_formulas, free_vars, substitute, to_text

BOUND_VAR = "x"


def param_var(i: int) -> str:
    return f"v{i}"


class TildeName:
    """An interned definability name: (level, template, parameters)."""

    __slots__ = ("level", "formula", "params", "text", "_hash", "__weakref__")

    _registry: dict[tuple, "TildeName"] = {}
    _lock = threading.Lock()

    def __new__(cls, level: int, formula: Formula, params: Sequence["TildeName"] = ()):
        params = tuple(params)
        key = (level, formula, params)
        found = cls._registry.get(key)
        if found is not None:
            return found
        if level < 0:
            raise InputError("tilde-name level must be non-negative")
        for p in params:
            if not isinstance(p, TildeName):
                raise InputError(f"tilde-name parameter {p!r} is not a tilde name")
            if p.level >= level:
                raise InputError(f"parameter {p} of level {p.level} is not in names_{level}")
        allowed = {param_var(i) for i in range(len(params) + 1)}
        extra = free_vars(formula) - allowed
        if extra:
            raise InputError(f"template has free variables {sorted(extra)} beyond v0..v{len(params)}")
        if level == 0 and formula != FALSE:
            # names_0 is empty, so every level-0 template denotes the empty map
            formula = FALSE
            key = (0, formula, params)
            found = cls._registry.get(key)
            if found is not None:
                return found
        with cls._lock:
            found = cls._registry.get(key)
            if found is not None:
                return found
            obj = super().__new__(cls)
            obj.level = level
            obj.formula = formula
            obj.params = params
            args = ",".join(p.text for p in params)
            obj.text = f"~{level}<{to_text(formula)}>({args})"
            obj._hash = hash(obj.text)
            cls._registry[key] = obj
            return obj

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: "TildeName") -> bool:
        return (self.level, self.text) < (other.level, other.text)

    def __reduce__(self):
        return (TildeName, (self.level, self.formula, self.params))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"TildeName({self.text})"

    @property
    def rank(self) -> int:
        return self.level

    def instance(self, z: "TildeName") -> Formula:
        """The sentence φ(z, p1, ..., pk) assigned to the domain element ``z``."""
        mapping = {param_var(i + 1): NameConst(p) for i, p in enumerate(self.params)}
        mapping[param_var(0)] = NameConst(z)
        return substitute(self.formula, mapping)


EMPTY_TILDE = TildeName(0, FALSE, ())


@dataclass(frozen=True)
class TildeBounds:
    """Generator bounds; levels are counted as in names_k (names_1 = {empty})."""

    #: enumerate names_0 .. names_max_level
    max_level: int = 3
    template_size: int = 2
    max_params: int = 1
    #: refuse levels larger than this
    max_level_size: int = 20_000

    @classmethod
    def from_mapping(cls, m: dict) -> "TildeBounds":
        known = {"max_level", "template_size", "max_params", "max_level_size"}
        bad = set(m) - known
        if bad:
            raise InputError(f"unknown tilde bound(s) {sorted(bad)}")
        b = cls(**{k: int(v) for k, v in m.items()})
        if b.max_level < 1 or b.template_size < 1 or b.max_params < 0:
            raise InputError("tilde bounds must be positive")
        return b


def templates(size: int, n_params: int, predicates: Sequence[str]) -> list[Formula]:
    """Templates of size ≤ ``size`` whose parameter variables are exactly v1..v{n_params}.

    v0 may or may not occur; one bound variable is available.
    """
    own = [Var(param_var(i)) for i in range(n_params + 1)]
    want = {param_var(i) for i in range(1, n_params + 1)}
    out = []
    for f in enumerate_formulas(size, own + [Var(BOUND_VAR)], predicates, (BOUND_VAR,), max_arity=2):
        fv = free_vars(f)
        if BOUND_VAR in fv:
            continue
        if fv - {param_var(0)} == want:
            out.append(f)
    return out


class TildeSpace:
    """The enumerated strata names_0, names_1, ..., names_max_level."""

    def __init__(self, predicates: Sequence[str], bounds: TildeBounds | None = None):
        self.predicates = tuple(predicates)
        self.bounds = bounds or TildeBounds()
        for p in self.predicates:
            if p == BOUND_VAR or p.startswith("v"):
                raise InputError(f"predicate symbol {p!r} clashes with template variables")

    def __repr__(self) -> str:
        return f"TildeSpace(predicates={self.predicates}, bounds={self.bounds})"

    @cached_property
    def _templates(self) -> tuple[tuple[Formula, ...], ...]:
        b = self.bounds
        return tuple(tuple(templates(b.template_size, k, self.predicates)) for k in range(b.max_params + 1))

    @cached_property
    def levels(self) -> tuple[tuple[TildeName, ...], ...]:
        b = self.bounds
        levels: list[tuple[TildeName, ...]] = [(), (EMPTY_TILDE,)]
        for k in range(2, b.max_level + 1):
            prev = levels[k - 1]
            alpha = k - 1
            out: list[TildeName] = []
            for n_params, temps in enumerate(self._templates):
                tuples = list(cartesian(prev, repeat=n_params))
                if len(out) + len(temps) * len(tuples) > b.max_level_size:
                    raise BoundsError(f"names_{k} would exceed {b.max_level_size} tilde names")
                for f in temps:
                    for ps in tuples:
                        out.append(TildeName(alpha, f, ps))
            levels.append(tuple(dict.fromkeys(out)))
        return tuple(levels[: b.max_level + 1])

    def names(self, k: int) -> tuple[TildeName, ...]:
        """The enumerated names_k (the domain of every level-k tilde name)."""
        if not 0 <= k <= self.bounds.max_level:
            raise BoundsError(f"names_{k} outside 0..{self.bounds.max_level}")
        return self.levels[k]

    def domain(self, t: TildeName) -> tuple[TildeName, ...]:
        return self.names(t.level)

    def all_names(self) -> list[TildeName]:
        return [t for lvl in self.levels for t in lvl]

    def check_member(self, t: TildeName) -> None:
        """Whether ``t`` can be interpreted with the enumerated strata."""
        if t.level > self.bounds.max_level:
            raise BoundsError(f"{t} has level {t.level} beyond names_{self.bounds.max_level}")
        for p in t.params:
            self.check_member(p)
