"""Boolean-valued names.

A :class:`Name` is a finite map from names of lower rank to elements of one
Boolean algebra.  Names are hash-consed: building the same entry map twice
returns the same object, so identity is structural equality.  Values only
need ``algebra``, ``is_one`` and ``sort_key``; both finite powerset elements
and sentence-algebra elements qualify.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Any, Iterable, Mapping

from .boolean_algebra import BoolAlg
from .errors import AlgebraMismatchError, BoundsError, InputError
from .ground_universe import HFSet, numeral

DEFAULT_STRATUM_CAP = 5000


class Name:
    __slots__ = ("_items", "_map", "rank", "algebra", "check_of", "sort_key", "_hash", "__weakref__")

    _registry: dict[frozenset, "Name"] = {}
    _lock = threading.Lock()

    def __new__(cls, entries: Mapping["Name", Any] | Iterable[tuple["Name", Any]] = ()):
        items = dict(entries.items() if isinstance(entries, Mapping) else entries)
        key = frozenset(items.items())
        found = cls._registry.get(key)
        if found is not None:
            return found
        alg = None
        for k, v in items.items():
            if not isinstance(k, Name):
                raise TypeError(f"name keys must be names, got {type(k).__name__}")
            if alg is None:
                alg = v.algebra
            elif v.algebra != alg:
                raise AlgebraMismatchError("name values come from different algebras")
        for k in items:
            if k.algebra is not None and k.algebra != alg:
                raise AlgebraMismatchError("name keys are over a different algebra than its values")
        with cls._lock:
            found = cls._registry.get(key)
            if found is not None:
                return found
            obj = super().__new__(cls)
            obj._items = tuple(sorted(items.items(), key=lambda kv: kv[0].sort_key))
            obj._map = dict(obj._items)
            obj.algebra = alg
            obj.rank = max((k.rank + 1 for k in items), default=0)
            if all(v.is_one and k.check_of is not None for k, v in obj._items):
                obj.check_of = HFSet(k.check_of for k, _ in obj._items)
            else:
                obj.check_of = None
            obj.sort_key = (obj.rank, tuple((k.sort_key, v.sort_key) for k, v in obj._items))
            obj._hash = hash(obj.sort_key)
            cls._registry[key] = obj
            return obj

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: "Name") -> bool:
        return self.sort_key < other.sort_key

    def __reduce__(self):
        return (Name, (self._items,))

    @property
    def dom(self) -> tuple["Name", ...]:
        return tuple(k for k, _ in self._items)

    def items(self) -> tuple[tuple["Name", Any], ...]:
        return self._items

    def get(self, key: "Name", default=None):
        return self._map.get(key, default)

    def __contains__(self, key) -> bool:
        return key in self._map

    def __len__(self) -> int:
        return len(self._items)

    def literal(self, check_shorthand: bool = True) -> str:
        """The name literal ``name{ key -> [..], ... }``.

        Keys that are check names print as ``check(<set>)``; with
        ``check_shorthand`` the whole name does too.
        """
        if check_shorthand and self.check_of is not None:
            return f"check({self.check_of})"
        if not self._items:
            return "name{}"
        body = ", ".join(f"{k.literal()} -> {v}" for k, v in self._items)
        return "name{ " + body + " }"

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"Name({self.literal()})"


EMPTY_NAME = Name()


def mk_name(entries: Mapping[Name, Any] | Iterable[tuple[Name, Any]] = ()) -> Name:
    return Name(entries)


@lru_cache(maxsize=None)
def check_name(x: HFSet, alg: BoolAlg) -> Name:
    """x̌ = { ě ↦ 1 : e ∈ x }."""
    one = alg.one
    return Name((check_name(e, alg), one) for e in x.sorted_elements)


def braces(alg: BoolAlg, *members: Name) -> Name:
    """The name listing ``members`` with value 1."""
    return Name((m, alg.one) for m in members)


def bpair_name(a: Name, b: Name, alg: BoolAlg | None = None) -> Name:
    """Kuratowski pair name ``{{a}, {a, b}}`` with every value 1."""
    alg = alg or a.algebra or b.algebra
    if alg is None:
        raise InputError("bpair_name of two empty names needs an explicit algebra")
    return braces(alg, braces(alg, a), braces(alg, a, b))


def choice_fn_name(X: Name, alg: BoolAlg | None = None) -> Name:
    """Name of a function from indices onto the interpretations of ``dom X``.

    The j-th key of ``X`` (in canonical order) is paired with the check name
    of the numeral j; every pair gets value 1.
    """
    if not len(X):
        return EMPTY_NAME
    alg = alg or X.algebra
    return braces(alg, *(bpair_name(check_name(numeral(j), alg), x, alg) for j, x in enumerate(X.dom)))


# ---------------------------------------------------------------- strata

@dataclass(frozen=True)
class Stratum:
    """All names over ``algebra`` of rank at most ``alpha``, in canonical order."""

    alpha: int
    algebra: BoolAlg
    names: tuple[Name, ...]

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, n) -> bool:
        return isinstance(n, Name) and n.rank <= self.alpha and (n.algebra is None or n.algebra == self.algebra)

    @property
    def index(self) -> dict[Name, int]:
        return _index_of(self)


@lru_cache(maxsize=None)
def _index_of(s: Stratum) -> dict[Name, int]:
    return {n: i for i, n in enumerate(s.names)}


def stratum_size(alg: BoolAlg, alpha: int) -> int:
    n = 1
    for _ in range(alpha):
        n = (alg.size + 1) ** n
    return n


@lru_cache(maxsize=None)
def _stratum(alg: BoolAlg, alpha: int) -> tuple[Name, ...]:
    if alpha == 0:
        return (EMPTY_NAME,)
    prev = _stratum(alg, alpha - 1)
    choices = [None, *alg.elements()]
    out = []
    for vals in cartesian(choices, repeat=len(prev)):
        out.append(Name((k, v) for k, v in zip(prev, vals) if v is not None))
    out.sort(key=lambda n: n.sort_key)
    return tuple(out)


def stratum(alg: BoolAlg, alpha: int, cap: int = DEFAULT_STRATUM_CAP) -> Stratum:
    if alpha < 0:
        raise InputError("stratum index must be non-negative")
    size = stratum_size(alg, alpha) if alpha < 4 else None
    if size is None or size > cap:
        raise BoundsError(f"stratum {alpha} over {len(alg.atoms)} atoms has more than {cap} names")
    return Stratum(alpha, alg, _stratum(alg, alpha))


def names_with_domain(dom: Iterable[Name], alg: BoolAlg, cap: int = DEFAULT_STRATUM_CAP) -> list[Name]:
    """Every name whose domain is exactly ``dom`` (all value assignments)."""
    dom = list(dom)
    count = alg.size ** len(dom)
    if count > cap:
        raise BoundsError(f"{count} names with a domain of {len(dom)} keys exceed the cap {cap}")
    elems = list(alg.elements())
    return [Name(zip(dom, vals)) for vals in cartesian(elems, repeat=len(dom))]
