"""Formula ASTs for the enriched language of set theory.

Atoms are ``t = t``, ``t in t`` and unary predicate applications ``P(t)``;
connectives are negation, finite-list conjunction and disjunction, and the
existential quantifier.  ``forall`` is accepted by the parser as sugar for
``not(exists v. not(...))``.

Concrete syntax::

    formula := "exists" VAR "." formula | "forall" VAR "." formula
             | "not" formula | "and" "(" [formula {"," formula}] ")"
             | "or" "(" [formula {"," formula}] ")" | "(" formula ")"
             | PRED "(" term ")" | term "=" term | term "!=" term | term "in" term
    term    := VAR | "name:" ID | "check(" set ")" | set | "name{" [entry {"," entry}] "}"
    entry   := term "->" "[" atom* "]"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .boolean_algebra import BoolAlg
from .errors import DSLSyntaxError, InputError
from .ground_universe import EnrichmentClass, HFSet, parse_set_at
from .names import Name, check_name

KEYWORDS = frozenset({"exists", "forall", "not", "and", "or", "in", "check", "name"})


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class SetConst:
    value: HFSet


@dataclass(frozen=True)
class CheckConst:
    """The check name of a ground set; denotes the set itself in any extension."""

    value: HFSet


@dataclass(frozen=True)
class NameConst:
    """An embedded name object (a Boolean-valued name or a definability name)."""

    value: object


@dataclass(frozen=True)
class Named:
    """A reference ``name:<id>`` to a name declared in a workspace."""

    ident: str


Term = Union[Var, SetConst, CheckConst, NameConst, Named]


# ---------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class In:
    left: Term
    right: Term


@dataclass(frozen=True)
class Pred:
    symbol: str
    arg: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class BigAnd:
    parts: tuple = ()


@dataclass(frozen=True)
class BigOr:
    parts: tuple = ()


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Eq, In, Pred, Not, BigAnd, BigOr, Exists]
ATOMIC = (Eq, In, Pred)

TRUE = BigAnd(())
FALSE = BigOr(())


def forall(var: str, body: Formula) -> Formula:
    return Not(Exists(var, Not(body)))


def Neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


# ---------------------------------------------------------------- structure

def _terms_of(f: Formula) -> tuple:
    if isinstance(f, (Eq, In)):
        return (f.left, f.right)
    if isinstance(f, Pred):
        return (f.arg,)
    return ()


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, ATOMIC):
        return frozenset(t.name for t in _terms_of(f) if isinstance(t, Var))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (BigAnd, BigOr)):
        return frozenset().union(*(free_vars(p) for p in f.parts))
    if isinstance(f, Exists):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, ATOMIC):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (BigAnd, BigOr)):
        return all(is_quantifier_free(p) for p in f.parts)
    return False


def formula_size(f: Formula) -> int:
    """Atoms count 1; every connective or quantifier node adds 1."""
    if isinstance(f, ATOMIC):
        return 1
    if isinstance(f, (Not, Exists)):
        return 1 + formula_size(f.body)
    return 1 + sum(formula_size(p) for p in f.parts)


def atoms_of(f: Formula) -> list[Formula]:
    """Atomic subformulas in left-to-right order (with repetitions)."""
    if isinstance(f, ATOMIC):
        return [f]
    if isinstance(f, (Not, Exists)):
        return atoms_of(f.body)
    return [a for p in f.parts for a in atoms_of(p)]


def constants_of(f: Formula) -> list[Term]:
    out = []
    for a in atoms_of(f):
        out.extend(t for t in _terms_of(a) if not isinstance(t, Var))
    return out


def map_terms(f: Formula, fn: Callable[[Term, frozenset], Term], bound: frozenset = frozenset()) -> Formula:
    """Rebuild ``f`` applying ``fn(term, bound_vars)`` to each term occurrence."""
    if isinstance(f, Eq):
        return Eq(fn(f.left, bound), fn(f.right, bound))
    if isinstance(f, In):
        return In(fn(f.left, bound), fn(f.right, bound))
    if isinstance(f, Pred):
        return Pred(f.symbol, fn(f.arg, bound))
    if isinstance(f, Not):
        return Not(map_terms(f.body, fn, bound))
    if isinstance(f, BigAnd):
        return BigAnd(tuple(map_terms(p, fn, bound) for p in f.parts))
    if isinstance(f, BigOr):
        return BigOr(tuple(map_terms(p, fn, bound) for p in f.parts))
    if isinstance(f, Exists):
        return Exists(f.var, map_terms(f.body, fn, bound | {f.var}))
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Replace free occurrences of variables by terms.

    Replacement terms must be constants, so no capture can occur.
    """
    for t in mapping.values():
        if isinstance(t, Var):
            raise InputError("substitute only accepts constant terms")

    def fn(t, bound):
        if isinstance(t, Var) and t.name not in bound and t.name in mapping:
            return mapping[t.name]
        return t

    return map_terms(f, fn)


# ---------------------------------------------------------------- printing

def term_text(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, SetConst):
        return str(t.value)
    if isinstance(t, CheckConst):
        return f"check({t.value})"
    if isinstance(t, Named):
        return f"name:{t.ident}"
    if isinstance(t, NameConst):
        v = t.value
        return v.literal(check_shorthand=False) if isinstance(v, Name) else str(v)
    raise TypeError(f"not a term: {t!r}")


def to_text(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"{term_text(f.left)} = {term_text(f.right)}"
    if isinstance(f, In):
        return f"{term_text(f.left)} in {term_text(f.right)}"
    if isinstance(f, Pred):
        return f"{f.symbol}({term_text(f.arg)})"
    if isinstance(f, Not):
        return f"not({to_text(f.body)})"
    if isinstance(f, BigAnd):
        return "and(" + ", ".join(to_text(p) for p in f.parts) + ")"
    if isinstance(f, BigOr):
        return "or(" + ", ".join(to_text(p) for p in f.parts) + ")"
    if isinstance(f, Exists):
        return f"exists {f.var}. {to_text(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text, predicates, algebra, resolve):
        self.text = text
        self.pos = 0
        self.predicates = predicates
        self.algebra = algebra
        self.resolve = resolve

    def error(self, msg, pos=None):
        raise DSLSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        t, n = self.text, len(self.text)
        while self.pos < n and t[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def peek_ident(self) -> str | None:
        self.skip()
        t, i = self.text, self.pos
        if i < len(t) and (t[i].isalpha() or t[i] == "_"):
            j = i + 1
            while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                j += 1
            return t[i:j]
        return None

    def ident(self) -> str:
        word = self.peek_ident()
        if word is None:
            self.error("expected an identifier")
        self.pos += len(word)
        return word

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    # formulas
    def formula(self) -> Formula:
        word = self.peek_ident()
        start = self.pos
        if word in ("exists", "forall"):
            self.pos += len(word)
            v = self.ident()
            if v in KEYWORDS:
                self.error(f"keyword {v!r} cannot be a variable", start)
            self.expect(".")
            body = self.formula()
            return Exists(v, body) if word == "exists" else forall(v, body)
        if word == "not":
            self.pos += 3
            if self.peek("("):
                self.pos += 1
                body = self.formula()
                self.expect(")")
                return Not(body)
            return Not(self.formula())
        if word in ("and", "or"):
            self.pos += len(word)
            self.expect("(")
            parts = []
            if not self.peek(")"):
                parts.append(self.formula())
                while self.peek(","):
                    self.pos += 1
                    parts.append(self.formula())
            self.expect(")")
            return BigAnd(tuple(parts)) if word == "and" else BigOr(tuple(parts))
        if self.peek("("):
            self.pos += 1
            f = self.formula()
            self.expect(")")
            return f
        if word is not None and word not in KEYWORDS:
            save = self.pos
            self.pos += len(word)
            if self.peek("("):
                if self.predicates is not None and word not in self.predicates:
                    self.error(f"unknown predicate symbol {word!r}", save)
                self.pos += 1
                arg = self.term()
                self.expect(")")
                return Pred(word, arg)
            self.pos = save
        left = self.term()
        if self.peek("!="):
            self.pos += 2
            return Not(Eq(left, self.term()))
        if self.peek("="):
            self.pos += 1
            return Eq(left, self.term())
        if self.peek_ident() == "in":
            self.pos += 2
            return In(left, self.term())
        self.error("expected '=', '!=' or 'in'")

    # terms
    def term(self) -> Term:
        if self.peek("{"):
            x, self.pos = parse_set_at(self.text, self.pos)
            return SetConst(x)
        word = self.peek_ident()
        if word is None:
            self.error("expected a term")
        if word == "check":
            self.pos += 5
            self.expect("(")
            x, self.pos = parse_set_at(self.text, self.pos)
            self.expect(")")
            return CheckConst(x)
        if word == "name":
            self.pos += 4
            if self.peek(":"):
                self.pos += 1
                return Named(self.ident())
            return NameConst(self.name_literal())
        if word in KEYWORDS:
            self.error(f"keyword {word!r} cannot be a term")
        self.pos += len(word)
        return Var(word)

    def name_literal(self) -> Name:
        start = self.pos
        self.expect("{")
        entries = {}
        if not self.peek("}"):
            while True:
                key = self.name_key()
                self.expect("->")
                val = self.element()
                if key in entries and entries[key] != val:
                    self.error("name literal maps one key to two values")
                entries[key] = val
                if self.peek(","):
                    self.pos += 1
                    continue
                break
        self.expect("}")
        try:
            return Name(entries)
        except InputError as exc:
            self.error(str(exc), start)

    def name_key(self) -> Name:
        t = self.term()
        if isinstance(t, NameConst):
            return t.value
        if isinstance(t, CheckConst):
            return check_name(t.value, self.need_algebra())
        if isinstance(t, Named):
            if self.resolve is None:
                self.error(f"cannot resolve name:{t.ident} here")
            return self.resolve(t.ident)
        self.error("a name key must be a name literal, check(...) or name:<id>")

    def need_algebra(self) -> BoolAlg:
        if self.algebra is None:
            self.error("name literals need a Boolean algebra")
        return self.algebra

    def element(self):
        self.skip()
        start = self.pos
        end = self.text.find("]", start)
        if not self.peek("[") or end < 0:
            self.error("expected an element literal [a b ...]")
        alg = self.need_algebra()
        try:
            e = alg.parse_element(self.text[start:end + 1])
        except InputError as exc:
            self.error(str(exc), start)
        self.pos = end + 1
        return e


def parse_formula(
    text: str,
    *,
    predicates: Iterable[str] | None = None,
    algebra: BoolAlg | None = None,
    resolve: Callable[[str], Name] | None = None,
) -> Formula:
    """Parse one formula.

    ``predicates`` restricts the allowed predicate symbols (``None`` allows
    any); ``algebra`` is needed for name literals and ``resolve`` for
    ``name:<id>`` keys inside them.
    """
    p = _Parser(text, None if predicates is None else frozenset(predicates), algebra, resolve)
    f = p.formula()
    if not p.at_end():
        p.error("trailing input")
    return f


def parse_term(text: str, *, algebra: BoolAlg | None = None, resolve=None) -> Term:
    p = _Parser(text, None, algebra, resolve)
    t = p.term()
    if not p.at_end():
        p.error("trailing input")
    return t


def parse_batch(text: str, **kw) -> list[Formula]:
    """One formula per non-blank line; lines starting with '#' are comments."""
    out = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            out.append(parse_formula(s, **kw))
    return out


# ---------------------------------------------------------------- evaluation

def _predicate_table(enrich) -> dict[str, frozenset]:
    if enrich is None:
        return {}
    if isinstance(enrich, Mapping):
        return {k: frozenset(v) for k, v in enrich.items()}
    if isinstance(enrich, EnrichmentClass):
        enrich = [enrich]
    return {e.predicate_name: e.extension for e in enrich}


def eval_in_structure(
    dom: Iterable[HFSet],
    enrich,
    f: Formula,
    denote: Callable[[Term], HFSet] | None = None,
    env: Mapping[str, HFSet] | None = None,
) -> bool:
    """Tarskian truth in ``(dom, ∈)`` with predicates read off ``enrich``.

    Quantifiers range over ``dom``.  ``SetConst`` and ``CheckConst`` denote
    their set; other constants go through ``denote``.  Every constant must
    denote a member of ``dom``; free variables must be bound by ``env``.
    """
    domain = tuple(sorted(set(dom)))
    members = frozenset(domain)
    preds = _predicate_table(enrich)
    cache: dict[Term, HFSet] = {}

    def const(t: Term) -> HFSet:
        if t in cache:
            return cache[t]
        if isinstance(t, (SetConst, CheckConst)):
            v = t.value
        elif denote is not None:
            v = denote(t)
        else:
            raise InputError(f"no denotation for constant {term_text(t)}")
        if v not in members:
            raise InputError(f"constant {term_text(t)} denotes {v}, which is outside the domain")
        cache[t] = v
        return v

    def val(t: Term, e) -> HFSet:
        if isinstance(t, Var):
            if t.name not in e:
                raise InputError(f"free variable {t.name} has no value")
            return e[t.name]
        return const(t)

    def ev(g: Formula, e) -> bool:
        if isinstance(g, Eq):
            return val(g.left, e) is val(g.right, e)
        if isinstance(g, In):
            return val(g.left, e) in val(g.right, e).elements
        if isinstance(g, Pred):
            if g.symbol not in preds:
                raise InputError(f"no interpretation for predicate {g.symbol}")
            return val(g.arg, e) in preds[g.symbol]
        if isinstance(g, Not):
            return not ev(g.body, e)
        if isinstance(g, BigAnd):
            return all(ev(p, e) for p in g.parts)
        if isinstance(g, BigOr):
            return any(ev(p, e) for p in g.parts)
        if isinstance(g, Exists):
            return any(ev(g.body, {**e, g.var: x}) for x in domain)
        raise TypeError(f"not a formula: {g!r}")

    return ev(f, dict(env or {}))


# ---------------------------------------------------------------- enumeration

def atomic_formulas(terms: Sequence[Term], predicates: Sequence[str] = ()) -> list[Formula]:
    out: list[Formula] = []
    for a in terms:
        for b in terms:
            out.append(Eq(a, b))
    for a in terms:
        for b in terms:
            out.append(In(a, b))
    for p in predicates:
        for a in terms:
            out.append(Pred(p, a))
    return out


def enumerate_formulas(
    max_size: int,
    terms: Sequence[Term],
    predicates: Sequence[str] = (),
    bind_vars: Sequence[str] = (),
    *,
    max_arity: int | None = None,
    leaves: Sequence[Formula] | None = None,
) -> Iterator[Formula]:
    """Every formula of size ``<= max_size``, smallest first, deterministically.

    Leaves are the atomic formulas over ``terms`` (or ``leaves`` if given),
    plus the empty conjunction and disjunction.  Quantifiers bind variables
    from ``bind_vars``; n-ary connectives take up to ``max_arity`` parts.
    """
    base = list(leaves) if leaves is not None else atomic_formulas(terms, predicates)
    by_size: dict[int, list[Formula]] = {}
    lists: dict[int, list[tuple]] = {0: [()]}

    def lists_of(total: int) -> list[tuple]:
        if total not in lists:
            out = []
            for s in range(1, total + 1):
                for f in by_size.get(s, ()):
                    for rest in lists_of(total - s):
                        if max_arity is None or len(rest) < max_arity:
                            out.append((f, *rest))
            lists[total] = out
        return lists[total]

    for s in range(1, max_size + 1):
        level: list[Formula] = []
        if s == 1:
            level.extend(base)
        else:
            prev = by_size.get(s - 1, [])
            level.extend(Not(f) for f in prev)
            for v in bind_vars:
                level.extend(Exists(v, f) for f in prev)
        parts = lists_of(s - 1)
        level.extend(BigAnd(p) for p in parts)
        level.extend(BigOr(p) for p in parts)
        by_size[s] = level
        yield from level
