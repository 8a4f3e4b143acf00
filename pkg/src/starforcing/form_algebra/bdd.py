"""Reduced ordered decision diagrams over atomic sentences: the algebra B_form.

Variables are atomic sentences, keyed by their text and ordered by it, so
the order is global and independent of the order in which atoms show up.
With a fixed order, a reduced diagram is canonical: two quantifier-free
sentences get the same node exactly when they agree under every truth
assignment to their atoms.  Nodes are hash-consed in one table.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from ..errors import InputError
from ..formula_lang import ATOMIC, BigAnd, BigOr, Formula, Not, is_quantifier_free, to_text

FALSE_ID, TRUE_ID = 0, 1


class FormAlgebra:
    """The node table and operation caches shared by every :class:`BFormElem`."""

    def __init__(self):
        # node id -> (variable text, low child, high child); terminals have var None
        self.nodes: list[tuple[str | None, int, int]] = [(None, 0, 0), (None, 1, 1)]
        self.unique: dict[tuple[str, int, int], int] = {}
        self.atoms: dict[str, Formula] = {}
        self._ops: dict[tuple, int] = {}
        # children always have smaller ids, so digests fill in id order
        self._digest: list[bytes] = [hashlib.blake2b(b"0", digest_size=16).digest(),
                                     hashlib.blake2b(b"1", digest_size=16).digest()]
        self.lock = threading.RLock()

    def __repr__(self) -> str:
        return f"FormAlgebra(nodes={len(self.nodes)}, atoms={len(self.atoms)})"

    # nodes
    def mk(self, var: str, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (var, lo, hi)
        found = self.unique.get(key)
        if found is not None:
            return found
        with self.lock:
            found = self.unique.get(key)
            if found is None:
                found = len(self.nodes)
                self.nodes.append(key)
                self.unique[key] = found
        return found

    def var_node(self, atom: Formula) -> int:
        if not isinstance(atom, ATOMIC):
            raise InputError(f"not an atomic sentence: {to_text(atom)}")
        key = to_text(atom)
        other = self.atoms.setdefault(key, atom)
        if other != atom:
            raise InputError(f"two atoms print as {key!r}")
        return self.mk(key, FALSE_ID, TRUE_ID)

    def digest(self, u: int) -> bytes:
        dig = self._digest
        while len(dig) <= u:
            var, lo, hi = self.nodes[len(dig)]
            dig.append(hashlib.blake2b(var.encode() + b"\0" + dig[lo] + dig[hi], digest_size=16).digest())
        return dig[u]

    # operations
    def neg(self, u: int) -> int:
        if u <= TRUE_ID:
            return 1 - u
        return self._run(("not", u, u))

    def _terminal(self, op: str, u: int, v: int) -> int | None:
        if op == "not":
            return 1 - u if u <= TRUE_ID else self._ops.get(("not", u))
        if op == "and":
            if u == FALSE_ID or v == FALSE_ID:
                return FALSE_ID
            if u == TRUE_ID:
                return v
            if v == TRUE_ID or u == v:
                return u
        else:
            if u == TRUE_ID or v == TRUE_ID:
                return TRUE_ID
            if u == FALSE_ID:
                return v
            if v == FALSE_ID or u == v:
                return u
        return self._ops.get((op, min(u, v), max(u, v)))

    def apply(self, op: str, u: int, v: int) -> int:
        r = self._terminal(op, u, v)
        return r if r is not None else self._run((op, u, v))

    def _run(self, task: tuple[str, int, int]) -> int:
        """Shannon expansion with an explicit stack (diagrams can be deep)."""
        nodes, ops = self.nodes, self._ops
        out: list[int] = []
        # frames: ("go", op, u, v) expands; ("mk", op, u, v, var) combines two results
        stack: list[tuple] = [("go", *task)]
        while stack:
            frame = stack.pop()
            if frame[0] == "go":
                _, op, u, v = frame
                r = self._terminal(op, u, v)
                if r is not None:
                    out.append(r)
                    continue
                if op == "not":
                    var, lo, hi = nodes[u]
                    stack.append(("mk", op, u, u, var))
                    stack.append(("go", op, hi, hi))
                    stack.append(("go", op, lo, lo))
                    continue
                (a, alo, ahi), (b, blo, bhi) = nodes[u], nodes[v]
                if a == b:
                    var, l1, l2, h1, h2 = a, alo, blo, ahi, bhi
                elif a < b:
                    var, l1, l2, h1, h2 = a, alo, v, ahi, v
                else:
                    var, l1, l2, h1, h2 = b, u, blo, u, bhi
                stack.append(("mk", op, u, v, var))
                stack.append(("go", op, h1, h2))
                stack.append(("go", op, l1, l2))
            else:
                _, op, u, v, var = frame
                hi = out.pop()
                lo = out.pop()
                r = self.mk(var, lo, hi)
                ops[("not", u) if op == "not" else (op, min(u, v), max(u, v))] = r
                out.append(r)
        return out.pop()

    def evaluate(self, u: int, truth: Callable[[str], bool]) -> bool:
        while u > TRUE_ID:
            var, lo, hi = self.nodes[u]
            u = hi if truth(var) else lo
        return u == TRUE_ID

    def support(self, u: int) -> set[str]:
        seen, out, stack = set(), set(), [u]
        while stack:
            w = stack.pop()
            if w <= TRUE_ID or w in seen:
                continue
            seen.add(w)
            var, lo, hi = self.nodes[w]
            out.add(var)
            stack += [lo, hi]
        return out

    def sat_count(self, u: int, variables: list[str]) -> int:
        """Number of satisfying assignments over ``variables`` (a superset of the support)."""
        order = sorted(variables)
        pos = {v: i for i, v in enumerate(order)}
        n = len(order)
        memo: dict[int, int] = {}

        def level(w):
            return n if w <= TRUE_ID else pos[self.nodes[w][0]]

        def count(w):
            if w <= TRUE_ID:
                return w
            if w not in memo:
                var, lo, hi = self.nodes[w]
                i = pos[var]
                memo[w] = (count(lo) << (level(lo) - i - 1)) + (count(hi) << (level(hi) - i - 1))
            return memo[w]

        return count(u) << level(u)


#: the single node table; every B_form element lives here
FORM_ALGEBRA = FormAlgebra()


@dataclass(frozen=True)
class BFormElem:
    """An equivalence class of quantifier-free sentences (a canonical node)."""

    node: int

    @property
    def algebra(self) -> FormAlgebra:
        return FORM_ALGEBRA

    @property
    def is_zero(self) -> bool:
        return self.node == FALSE_ID

    @property
    def is_one(self) -> bool:
        return self.node == TRUE_ID

    @property
    def sort_key(self) -> bytes:
        return FORM_ALGEBRA.digest(self.node)

    def __and__(self, other: "BFormElem") -> "BFormElem":
        return BFormElem(FORM_ALGEBRA.apply("and", self.node, other.node))

    def __or__(self, other: "BFormElem") -> "BFormElem":
        return BFormElem(FORM_ALGEBRA.apply("or", self.node, other.node))

    def __invert__(self) -> "BFormElem":
        return BFormElem(FORM_ALGEBRA.neg(self.node))

    def __le__(self, other: "BFormElem") -> bool:
        return (self & other) == self

    def evaluate(self, truth: Callable[[str], bool] | Mapping[str, bool]) -> bool:
        fn = truth.__getitem__ if isinstance(truth, Mapping) else truth
        return FORM_ALGEBRA.evaluate(self.node, fn)

    @property
    def support(self) -> set[str]:
        return FORM_ALGEBRA.support(self.node)

    def to_formula(self) -> Formula:
        """A sentence in this class (the diagram read back as nested cases)."""
        if self.node == TRUE_ID:
            return BigAnd(())
        if self.node == FALSE_ID:
            return BigOr(())
        var, lo, hi = FORM_ALGEBRA.nodes[self.node]
        atom = FORM_ALGEBRA.atoms[var]
        return BigOr((BigAnd((atom, BFormElem(hi).to_formula())), BigAnd((Not(atom), BFormElem(lo).to_formula()))))

    def __str__(self) -> str:
        if self.is_one:
            return "[1]"
        if self.is_zero:
            return "[0]"
        return "[" + self.sort_key.hex()[:12] + "]"


ZERO = BFormElem(FALSE_ID)
ONE = BFormElem(TRUE_ID)


def canonical_form(s: Formula) -> BFormElem:
    """The class of a quantifier-free sentence modulo propositional equivalence."""
    if not is_quantifier_free(s):
        raise InputError("canonical_form needs a quantifier-free sentence")
    A = FORM_ALGEBRA

    def walk(f: Formula) -> int:
        if isinstance(f, ATOMIC):
            return A.var_node(f)
        if isinstance(f, Not):
            return A.neg(walk(f.body))
        if isinstance(f, BigAnd):
            acc = TRUE_ID
            for p in f.parts:
                acc = A.apply("and", acc, walk(p))
            return acc
        if isinstance(f, BigOr):
            acc = FALSE_ID
            for p in f.parts:
                acc = A.apply("or", acc, walk(p))
            return acc
        raise TypeError(f"not a quantifier-free formula: {f!r}")

    return BFormElem(walk(s))


def bform_complement(e: BFormElem) -> BFormElem:
    return ~e


def bform_sum(elems: Iterable[BFormElem]) -> BFormElem:
    acc = ZERO
    for e in elems:
        acc = acc | e
    return acc


def bform_product(elems: Iterable[BFormElem]) -> BFormElem:
    acc = ONE
    for e in elems:
        acc = acc & e
    return acc
