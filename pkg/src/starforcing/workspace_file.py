"""Workspace files: INI-style text read with :mod:`configparser`.

Example::

    [universe]
    rank = 3                  ; V_3, the sets of rank < 3

    [algebra]
    atoms = p q

    [enrich]
    H = { {} }                ; predicate H holds of the members of this set

    [bounds]
    max_name_rank = 2
    tilde_max_level = 3       ; generator bounds for definability names

    [sets]
    two = { {}, {{}} }

    [names]
    n1 = name{ check({}) -> [p] }
    n2 = name{ name:n1 -> [q] }   ; earlier ids may be referenced

    [tilde]
    t1 = 1 | H(v0) | empty        ; level | template | parameter ids
    t2 = 2 | v0 = v1 | t1

Entries are read in file order, and a reference must point to an entry
declared earlier.  The builtin tilde id ``empty`` is the empty tilde name.
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .boolean_algebra import mk_powerset_algebra
from .errors import InputError
from .formula_lang import CheckConst, NameConst, Named, parse_formula, parse_term
from .form_algebra.tilde import EMPTY_TILDE, TildeBounds, TildeName
from .ground_universe import EnrichmentClass, build_hf_universe, parse_set
from .names import Name, check_name
from .star_forcing.workspace import Bounds, Workspace

SECTIONS = ("universe", "algebra", "enrich", "bounds", "sets", "names", "tilde")
BOUND_KEYS = ("max_name_rank", "max_stratum_size", "max_formula_size", "max_cells")
TILDE_PREFIX = "tilde_"


def _int(section: str, key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"[{section}] {key}: expected an integer, got {text!r}") from None


def parse_workspace(text: str, source: str = "<workspace>", max_rank: int | None = None) -> Workspace:
    """Build a :class:`Workspace` from workspace-file text.

    ``max_rank`` overrides ``[bounds] max_name_rank``.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None,
                                   delimiters=("=",), strict=True)
    cp.optionxform = str  # ids and predicate symbols are case sensitive
    try:
        cp.read_string(text, source=source)
    except configparser.Error as e:
        raise InputError(f"{source}: {e}") from None
    unknown = [s for s in cp.sections() if s not in SECTIONS]
    if unknown:
        raise InputError(f"{source}: unknown section(s) {unknown}")
    for s in ("universe", "algebra"):
        if not cp.has_section(s):
            raise InputError(f"{source}: missing [{s}] section")
    sec = lambda s: cp[s] if cp.has_section(s) else {}

    uni = sec("universe")
    if "rank" not in uni:
        raise InputError(f"{source}: [universe] needs rank")
    universe = build_hf_universe(_int("universe", "rank", uni["rank"]))
    atoms = sec("algebra").get("atoms", "").replace(",", " ").split()
    algebra = mk_powerset_algebra(atoms)

    sets: dict[str, object] = {}
    for k, v in sec("sets").items():
        sets[k] = parse_set(v)

    enrich = []
    for k, v in sec("enrich").items():
        ext = sets[v.strip()] if v.strip() in sets else parse_set(v)
        enrich.append(EnrichmentClass(k, ext.elements))

    bkw, tkw = {}, {}
    for k, v in sec("bounds").items():
        if k in BOUND_KEYS:
            bkw[k] = _int("bounds", k, v)
        elif k.startswith(TILDE_PREFIX):
            tkw[k[len(TILDE_PREFIX):]] = _int("bounds", k, v)
        else:
            raise InputError(f"{source}: unknown bound {k!r}")
    if max_rank is not None:
        bkw["max_name_rank"] = max_rank
    TildeBounds.from_mapping(tkw)  # validate early

    names: dict[str, Name] = {}

    def resolve(ident: str) -> Name:
        if ident not in names:
            raise InputError(f"name:{ident} is used before it is declared")
        return names[ident]

    for k, v in sec("names").items():
        t = parse_term(v, algebra=algebra, resolve=resolve)
        if isinstance(t, NameConst):
            names[k] = t.value
        elif isinstance(t, CheckConst):
            names[k] = check_name(t.value, algebra)
        elif isinstance(t, Named):
            names[k] = resolve(t.ident)
        else:
            raise InputError(f"[names] {k}: expected a name literal, check(...) or name:<id>")

    preds = [e.predicate_name for e in enrich]
    tildes: dict[str, TildeName] = {}
    for k, v in sec("tilde").items():
        parts = [p.strip() for p in v.split("|")]
        if len(parts) not in (2, 3):
            raise InputError(f"[tilde] {k}: expected 'level | template | params'")
        level = _int("tilde", k, parts[0])
        formula = parse_formula(parts[1], predicates=preds)
        params = []
        for ident in (parts[2].replace(",", " ").split() if len(parts) == 3 else []):
            if ident == "empty":
                params.append(EMPTY_TILDE)
            elif ident in tildes:
                params.append(tildes[ident])
            else:
                raise InputError(f"[tilde] {k}: parameter {ident!r} is not declared earlier")
        tildes[k] = TildeName(level, formula, params)

    return Workspace(universe, algebra, tuple(enrich), Bounds(**bkw), sets, names, tildes, tkw)


def load_workspace(path: str | Path, max_rank: int | None = None) -> Workspace:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read workspace {p}: {e.strerror}") from None
    return parse_workspace(text, str(p), max_rank)
