"""Hereditarily finite sets: the desk-scale ground model.

:class:`HFSet` values are hash-consed, so two sets with the same elements are
the same object.  Sets are ordered as their Ackermann codes
``code(x) = sum(2**code(e) for e in x)`` are, a bijection between
hereditarily finite sets and the naturals; the order refines rank and gives
a canonical enumeration of every ``V_r``.  The comparison itself works on
nested tuples so it never needs the (astronomical) codes of high-rank sets.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BoundsError, DSLSyntaxError, InputError

RANK_CAP = 5


class HFSet:
    __slots__ = ("elements", "key", "rank", "_code", "_hash", "_sorted", "__weakref__")

    _registry: dict[frozenset, "HFSet"] = {}
    _lock = threading.Lock()

    elements: frozenset
    #: the Ackermann order as a comparable tuple (elements' keys, descending)
    key: tuple
    rank: int

    def __new__(cls, elements: Iterable["HFSet"] = ()):
        key = frozenset(elements)
        found = cls._registry.get(key)
        if found is not None:
            return found
        for e in key:
            if not isinstance(e, HFSet):
                raise TypeError(f"HFSet elements must be HFSet, got {type(e).__name__}")
        with cls._lock:
            found = cls._registry.get(key)
            if found is not None:
                return found
            obj = super().__new__(cls)
            obj.elements = key
            obj._sorted = tuple(sorted(key, key=lambda e: e.key))
            obj.key = tuple(e.key for e in reversed(obj._sorted))
            obj.rank = max((e.rank + 1 for e in key), default=0)
            obj._code = None
            obj._hash = hash(key)
            cls._registry[key] = obj
            return obj

    @property
    def code(self) -> int:
        """Ackermann code; only materialized for sets of rank <= 5."""
        if self._code is None:
            if self.rank > RANK_CAP:
                raise BoundsError(f"the Ackermann code of a rank {self.rank} set is too large to write down")
            self._code = sum(1 << e.code for e in self.elements)
        return self._code

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return self is other

    def __lt__(self, other: "HFSet") -> bool:
        return self.key < other.key

    def __le__(self, other: "HFSet") -> bool:
        return self.key <= other.key

    def __iter__(self) -> Iterator["HFSet"]:
        return iter(self.sorted_elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    def __reduce__(self):
        return (HFSet, (tuple(self.sorted_elements),))

    @property
    def sorted_elements(self) -> tuple["HFSet", ...]:
        return self._sorted

    def is_subset(self, other: "HFSet") -> bool:
        return self.elements <= other.elements

    def __str__(self) -> str:
        if not self.elements:
            return "{}"
        return "{" + ", ".join(str(e) for e in self.sorted_elements) + "}"

    def __repr__(self) -> str:
        return f"HFSet({self})"

    @classmethod
    def empty(cls) -> "HFSet":
        return cls(())

    @classmethod
    def from_code(cls, n: int) -> "HFSet":
        if n < 0:
            raise InputError("Ackermann codes are non-negative")
        elems = []
        i = 0
        while n:
            if n & 1:
                elems.append(cls.from_code(i))
            n >>= 1
            i += 1
        return cls(elems)


EMPTY = HFSet.empty()


def numeral(n: int) -> HFSet:
    """The von Neumann natural ``n = {0, ..., n-1}``."""
    x = EMPTY
    for _ in range(n):
        x = HFSet([*x.elements, x])
    return x


def pair(a: HFSet, b: HFSet) -> HFSet:
    """Kuratowski pair ``{{a}, {a, b}}``."""
    return HFSet([HFSet([a]), HFSet([a, b])])


def rank(x: HFSet) -> int:
    return x.rank


def transitive_closure(x: HFSet) -> frozenset[HFSet]:
    seen: set[HFSet] = set()
    stack = list(x.elements)
    while stack:
        e = stack.pop()
        if e not in seen:
            seen.add(e)
            stack.extend(e.elements)
    return frozenset(seen)


def is_transitive(xs: Iterable[HFSet]) -> bool:
    xs = set(xs)
    return all(e in xs for x in xs for e in x.elements)


# ---------------------------------------------------------------- literals

def parse_set_at(text: str, pos: int) -> tuple[HFSet, int]:
    """Parse one set literal starting at ``pos`` (whitespace allowed)."""
    n = len(text)

    def skip(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip(pos)
    if pos >= n or text[pos] != "{":
        raise DSLSyntaxError("expected '{'", text, pos)
    pos = skip(pos + 1)
    elems = []
    if pos < n and text[pos] == "}":
        return EMPTY, pos + 1
    while True:
        e, pos = parse_set_at(text, pos)
        elems.append(e)
        pos = skip(pos)
        if pos < n and text[pos] == ",":
            pos += 1
            continue
        if pos < n and text[pos] == "}":
            return HFSet(elems), pos + 1
        raise DSLSyntaxError("expected ',' or '}' in set literal", text, pos)


def parse_set(text: str) -> HFSet:
    x, pos = parse_set_at(text, 0)
    if text[pos:].strip():
        raise DSLSyntaxError("trailing input after set literal", text, pos)
    return x


# ---------------------------------------------------------------- universe

@dataclass(frozen=True)
class Universe:
    """All hereditarily finite sets of rank below ``rank_bound`` (that is, V_r)."""

    rank_bound: int
    members: tuple[HFSet, ...]

    def __contains__(self, x) -> bool:
        return isinstance(x, HFSet) and x.rank < self.rank_bound

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[HFSet]:
        return iter(self.members)

    def level(self, r: int) -> tuple[HFSet, ...]:
        """Members of rank < r."""
        return tuple(x for x in self.members if x.rank < r)


def hf_count(rank_bound: int) -> int:
    """|V_r| = 2 ↑↑ (r-1) for r >= 1, and 0 for r = 0."""
    if rank_bound <= 0:
        return 0
    n = 1
    for _ in range(rank_bound - 1):
        n = 1 << n
    return n


def build_hf_universe(rank_bound: int, cap: int = RANK_CAP) -> Universe:
    if rank_bound < 1:
        raise InputError("rank_bound must be at least 1")
    if rank_bound > cap:
        raise BoundsError(f"rank_bound {rank_bound} exceeds the cap {cap}")
    members = tuple(HFSet.from_code(n) for n in range(hf_count(rank_bound)))
    return Universe(rank_bound, members)


@dataclass(frozen=True)
class EnrichmentClass:
    """A unary predicate symbol interpreted by membership in ``extension``."""

    predicate_name: str
    extension: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "extension", frozenset(self.extension))

    def __contains__(self, x) -> bool:
        return x in self.extension

    def as_set(self) -> HFSet:
        return HFSet(self.extension)

    def check_inside(self, universe: Universe) -> None:
        outside = [x for x in self.extension if x not in universe]
        if outside:
            raise InputError(f"enrichment {self.predicate_name} has elements outside the universe: {min(outside)}")


def gamma_index(a: int, b: int) -> int:
    """Position of (a, b) in the canonical well order of pairs.

    Pairs are ordered by their maximum, then lexicographically.
    """
    if a < 0 or b < 0:
        raise InputError("ordinals are non-negative")
    m = max(a, b)
    return m * m + a if a < m else m * m + m + b


# ---------------------------------------------------------------- definability

class _Denotations:
    """Bit-level semantics of formulas over ``U`` with a fixed variable pool.

    A denotation is an int whose bit ``i`` is the truth value at assignment
    ``i``; assignment ``i`` sends variable ``k`` to ``U[(i // n**k) % n]``.
    """

    def __init__(self, dom: Sequence[HFSet], n_vars: int):
        self.dom = list(dom)
        self.n = len(self.dom)
        self.k = n_vars
        self.size = self.n ** n_vars
        self.full = (1 << self.size) - 1
        self.strides = [self.n ** i for i in range(n_vars)]
        # slices[v][j]: positions where variable v takes value j
        self.slices = [[0] * self.n for _ in range(n_vars)]
        for pos in range(self.size):
            for v in range(n_vars):
                self.slices[v][(pos // self.strides[v]) % self.n] |= 1 << pos

    def value(self, pos: int, v: int) -> HFSet:
        return self.dom[(pos // self.strides[v]) % self.n]

    def atom(self, test) -> int:
        d = 0
        for pos in range(self.size):
            if test(pos):
                d |= 1 << pos
        return d

    def exists(self, d: int, v: int) -> int:
        s = self.strides[v]
        base = 0
        for j in range(self.n):
            base |= (d & self.slices[v][j]) >> (j * s)
        out = 0
        for j in range(self.n):
            out |= base << (j * s)
        return out

    def defined_subset(self, d: int) -> frozenset[HFSet] | None:
        """The subset of U defined in variable 0, if ``d`` ignores the others."""
        for v in range(1, self.k):
            if self.exists(d, v) != d:
                return None
        return frozenset(self.dom[j] for j in range(self.n) if d >> j & 1)


def definable_subsets(
    U: Iterable[HFSet],
    enrich: EnrichmentClass | Sequence[EnrichmentClass] | None,
    formula_size_bound: int,
    *,
    extra_vars: int = 1,
    params: bool = True,
    max_classes: int = 200_000,
) -> frozenset[frozenset[HFSet]]:
    """Subsets of ``U`` definable by enriched formulas of bounded size.

    Quantifiers range over ``U``; parameters are elements of ``U``.  Formulas
    are counted with the size measure of :func:`formula_lang.formula_size`
    (atoms 1, each connective or quantifier node 1 more than its children).
    The search is over denotations rather than syntax: for each denotation the
    least size of a formula realizing it is computed by dynamic programming,
    which is exact because every connective's size is monotone in its
    children's sizes.
    """
    dom = sorted(set(U))
    if not is_transitive(dom):
        raise InputError("definable_subsets needs a transitive domain")
    if enrich is None:
        preds: list[EnrichmentClass] = []
    elif isinstance(enrich, EnrichmentClass):
        preds = [enrich]
    else:
        preds = list(enrich)
    if not dom:
        # only the empty subset exists; any bound >= 1 realizes it
        return frozenset({frozenset()}) if formula_size_bound >= 1 else frozenset()

    sem = _Denotations(dom, 1 + extra_vars)
    n = sem.n
    terms: list = [("var", v) for v in range(sem.k)]
    if params:
        terms += [("par", j) for j in range(n)]

    def term_value(t, pos):
        return sem.value(pos, t[1]) if t[0] == "var" else dom[t[1]]

    atoms: set[int] = set()
    for t1 in terms:
        for t2 in terms:
            atoms.add(sem.atom(lambda pos: term_value(t1, pos) is term_value(t2, pos)))
            atoms.add(sem.atom(lambda pos: term_value(t1, pos) in term_value(t2, pos).elements))
        for p in preds:
            atoms.add(sem.atom(lambda pos: term_value(t1, pos) in p.extension))

    target = frozenset(frozenset(dom[j] for j in range(n) if m >> j & 1) for m in range(1 << n))
    best: dict[int, int] = {}
    levels: dict[int, set[int]] = {}
    conj: dict[int, set[int]] = {0: {sem.full}}
    disj: dict[int, set[int]] = {0: {0}}
    found: set[frozenset[HFSet]] = set()

    def admit(d: int, s: int) -> None:
        if d not in best:
            best[d] = s
            levels.setdefault(s, set()).add(d)
            sub = sem.defined_subset(d)
            if sub is not None:
                found.add(sub)

    for s in range(1, formula_size_bound + 1):
        if s == 1:
            for d in atoms:
                admit(d, 1)
        # n-ary lists whose children sizes total s - 1
        t = s - 1
        if t >= 1:
            cj: set[int] = set()
            dj: set[int] = set()
            for cs in range(1, t + 1):
                for d in levels.get(cs, ()):
                    for c in conj.get(t - cs, ()):
                        cj.add(c & d)
                    for c in disj.get(t - cs, ()):
                        dj.add(c | d)
            conj[t] = cj
            disj[t] = dj
        cands: set[int] = set(conj[s - 1]) | set(disj[s - 1])
        for d in levels.get(s - 1, ()):
            cands.add(sem.full ^ d)
            for v in range(sem.k):
                cands.add(sem.exists(d, v))
        for d in sorted(cands):
            admit(d, s)
        if len(best) > max_classes:
            raise BoundsError(f"definability search exceeded {max_classes} denotation classes")
        if found == target:
            break
    return frozenset(found)


def powerset(xs: Iterable[HFSet]) -> frozenset[frozenset[HFSet]]:
    xs = sorted(set(xs))
    return frozenset(frozenset(x for i, x in enumerate(xs) if m >> i & 1) for m in range(1 << len(xs)))
