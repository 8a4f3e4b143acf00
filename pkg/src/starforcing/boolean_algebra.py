"""Finite complete Boolean algebras realized as powerset algebras over atoms.

Elements are stored as bitmasks over the atom order fixed at creation, so
structural equality of elements is equality of the underlying atom sets.
Complete sums and products over finite families are unions and intersections.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import AlgebraMismatchError, DSLSyntaxError, InputError
from .report import Report

_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class BoolAlg:
    """The powerset algebra on ``atoms``; atom order is stable and total."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        if not self.atoms:
            raise InputError("a Boolean algebra needs at least one atom")
        if len(set(self.atoms)) != len(self.atoms):
            raise InputError(f"duplicate atom labels in {list(self.atoms)}")
        for a in self.atoms:
            if not isinstance(a, str) or not _LABEL.match(a):
                raise InputError(f"bad atom label {a!r}")

    @cached_property
    def size(self) -> int:
        return 1 << len(self.atoms)

    @cached_property
    def full_mask(self) -> int:
        return self.size - 1

    @property
    def zero(self) -> "BoolElem":
        return BoolElem(self, 0)

    @property
    def one(self) -> "BoolElem":
        return BoolElem(self, self.full_mask)

    def index(self, label: str) -> int:
        try:
            return self.atoms.index(label)
        except ValueError:
            raise InputError(f"unknown atom {label!r}; algebra atoms are {list(self.atoms)}") from None

    def atom(self, label: str) -> "BoolElem":
        return BoolElem(self, 1 << self.index(label))

    def element(self, labels: Iterable[str]) -> "BoolElem":
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return BoolElem(self, mask)

    @cached_property
    def _by_mask(self) -> tuple["BoolElem", ...]:
        return tuple(BoolElem(self, m) for m in range(self.size))

    def from_mask(self, mask: int) -> "BoolElem":
        if not 0 <= mask <= self.full_mask:
            raise InputError(f"mask {mask} out of range for {len(self.atoms)} atoms")
        return self._by_mask[mask]

    def elements(self) -> Iterator["BoolElem"]:
        """All elements, ordered by bitmask (0 first, 1 last)."""
        return iter(self._by_mask)

    def parse_element(self, text: str) -> "BoolElem":
        """Parse an element literal such as ``[p q]`` or ``[]``."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise DSLSyntaxError("element literal must look like [a b ...]", text, 0)
        return self.element(s[1:-1].split())

    def __str__(self) -> str:
        return "{" + " ".join(self.atoms) + "}"


@dataclass(frozen=True)
class BoolElem:
    algebra: BoolAlg
    mask: int

    def _check(self, other: "BoolElem") -> None:
        if not isinstance(other, BoolElem):
            raise TypeError(f"expected BoolElem, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError(f"elements of {self.algebra} and {other.algebra} mixed")

    def __and__(self, other: "BoolElem") -> "BoolElem":
        self._check(other)
        return BoolElem(self.algebra, self.mask & other.mask)

    def __or__(self, other: "BoolElem") -> "BoolElem":
        self._check(other)
        return BoolElem(self.algebra, self.mask | other.mask)

    def __invert__(self) -> "BoolElem":
        return BoolElem(self.algebra, self.algebra.full_mask & ~self.mask)

    def __le__(self, other: "BoolElem") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __ge__(self, other: "BoolElem") -> bool:
        return other <= self

    def __lt__(self, other: "BoolElem") -> bool:
        return self <= other and self.mask != other.mask

    @property
    def atomset(self) -> tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.algebra.atoms) if self.mask >> i & 1)

    @property
    def sort_key(self) -> int:
        return self.mask

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_one(self) -> bool:
        return self.mask == self.algebra.full_mask

    def __str__(self) -> str:
        return "[" + " ".join(self.atomset) + "]"

    def __repr__(self) -> str:
        return f"BoolElem{self}"


def mk_powerset_algebra(atom_labels: Sequence[str]) -> BoolAlg:
    return BoolAlg(tuple(atom_labels))


def complement(e: BoolElem) -> BoolElem:
    return ~e


def _same_algebra(alg: BoolAlg, xs: Iterable[BoolElem]) -> list[BoolElem]:
    xs = list(xs)
    for x in xs:
        if x.algebra != alg:
            raise AlgebraMismatchError(f"element {x} is not from {alg}")
    return xs


def sum_(alg: BoolAlg, xs: Iterable[BoolElem]) -> BoolElem:
    """Least upper bound of a finite family; the empty sum is 0."""
    return BoolElem(alg, reduce(lambda m, x: m | x.mask, _same_algebra(alg, xs), 0))


def product(alg: BoolAlg, xs: Iterable[BoolElem]) -> BoolElem:
    """Greatest lower bound of a finite family; the empty product is 1."""
    return BoolElem(alg, reduce(lambda m, x: m & x.mask, _same_algebra(alg, xs), alg.full_mask))


@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter generated by one atom."""

    algebra: BoolAlg
    generator: str

    def __post_init__(self):
        self.algebra.index(self.generator)

    @property
    def bit(self) -> int:
        return self.algebra.index(self.generator)

    def __contains__(self, e) -> bool:
        if not isinstance(e, BoolElem):
            return False
        if e.algebra != self.algebra:
            raise AlgebraMismatchError(f"{e} is not from {self.algebra}")
        return bool(e.mask >> self.bit & 1)

    def __str__(self) -> str:
        return f"U_{self.generator}"


def enumerate_ultrafilters(alg: BoolAlg) -> list[Ultrafilter]:
    return [Ultrafilter(alg, a) for a in alg.atoms]


def all_families(alg: BoolAlg, max_size: int | None = None) -> Iterator[tuple[BoolElem, ...]]:
    """Every finite family of elements (as a sorted tuple), smallest first."""
    elems = list(alg.elements())
    top = len(elems) if max_size is None else min(max_size, len(elems))
    for k in range(top + 1):
        yield from combinations(elems, k)


def check_m_complete(u: Ultrafilter, families: Iterable[Iterable[BoolElem]]) -> Report:
    """For each family whose sum lies in ``u``, find a summand lying in ``u``.

    Families whose sum is outside ``u`` pass vacuously; their records carry
    ``rhs="vacuous"``.
    """
    report = Report("m-complete")
    for fam in families:
        fam = tuple(fam)
        s = sum_(u.algebra, fam)
        inst = "{" + ", ".join(str(x) for x in fam) + "}"
        if s not in u:
            report.add("m-complete", inst, str(s), "vacuous", True, f"{u}")
            continue
        witness = next((x for x in fam if x in u), None)
        report.add("m-complete", inst, str(s), None if witness is None else str(witness), witness is not None, f"{u}")
    return report
