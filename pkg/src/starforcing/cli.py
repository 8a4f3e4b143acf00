"""Command-line front end: ``starforcing value | check | quotient``.

Exit codes: 0 clean, 1 a violation was found, 2 bad input, 3 a bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import BoundsError, InputError
from .form_algebra.suites import SUITES as FORM_SUITES
from .formula_lang import Named, Var, map_terms, parse_formula, to_text
from .report import INFO, Record, Report
from .star_forcing import firstorder as fo
from .star_forcing.quotient import INDUCED, STAR, check_extensionality, quotient_model
from .star_forcing.suites import SUITES as STAR_SUITES
from .star_forcing.values import interpret, value_qf, value_star
from .star_forcing.workspace import Workspace
from .workspace_file import load_workspace

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BOUNDS = 0, 1, 2, 3
ALL_SUITES = {**STAR_SUITES, **FORM_SUITES}


def bind_declared(f, ws: Workspace):
    """Free identifiers that match declared names become ``name:<id>`` references."""

    def fn(t, bound):
        if isinstance(t, Var) and t.name not in bound and t.name in ws.names:
            return Named(t.name)
        return t

    return map_terms(f, fn)


def _formula(ws: Workspace, text: str):
    f = parse_formula(text, predicates=ws.predicates, algebra=ws.algebra, resolve=_resolver(ws))
    return bind_declared(f, ws)


def _resolver(ws: Workspace):
    def resolve(ident):
        if ident not in ws.names:
            raise InputError(f"unknown name id {ident!r}")
        return ws.names[ident]

    return resolve


def cmd_value(ws: Workspace, text: str, mode: str, stratum: int | None) -> tuple[str, int]:
    f = _formula(ws, text)
    bound = ""
    if mode == "star":
        v = value_star(ws, f)
    elif mode == "induced":
        v = value_qf(ws, f)
    elif mode.startswith("alpha:"):
        try:
            alpha = int(mode[len("alpha:"):])
        except ValueError:
            raise InputError(f"bad mode {mode!r}; expected alpha:<N>") from None
        if not 0 <= alpha <= ws.bounds.max_name_rank:
            raise BoundsError(f"stratum {alpha} outside 0..{ws.bounds.max_name_rank}")
        v = fo.value_alpha(ws, f, alpha)
    elif mode == "fo":
        alpha = ws.bounds.max_name_rank if stratum is None else stratum
        res = fo.value_fo(ws, f, alpha)
        v = res.value
        bound = f"{res.bound}; stable={str(res.stable).lower()} over strata {alpha}..{alpha + len(res.by_stratum) - 1}"
    else:
        raise InputError(f"unknown mode {mode!r}")
    rec = Record("value", to_text(f), str(v), mode, INFO, bound)
    return f"{v}\n{rec.to_json()}\n", EXIT_OK


def cmd_check(ws: Workspace, suite: str, ultrafilter: str | None) -> tuple[str, int]:
    if suite not in ALL_SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(sorted(ALL_SUITES))}")
    G = ws.ultrafilter(ultrafilter) if ultrafilter else None
    rep: Report = ALL_SUITES[suite](ws, G)
    return rep.render(), EXIT_OK if rep.ok else EXIT_VIOLATION


def _quotient_names(ws: Workspace, names: str | None, stratum: int | None):
    if names is not None:
        ids = [s for s in names.replace(",", " ").split()]
        return [_resolver(ws)(i) for i in ids]
    alpha = ws.bounds.max_name_rank if stratum is None else stratum
    return list(ws.stratum(alpha).names)


def cmd_quotient(ws: Workspace, ultrafilter: str | None, mode: str, names: str | None,
                 stratum: int | None) -> tuple[str, int]:
    if not ultrafilter:
        raise InputError("quotient needs --ultrafilter <atom>")
    if mode not in (STAR, INDUCED):
        raise InputError(f"quotient mode must be {STAR} or {INDUCED}")
    G = ws.ultrafilter(ultrafilter)
    q = quotient_model(ws, G, _quotient_names(ws, names, stratum), mode)
    out = []
    for j, cls in enumerate(q.classes):
        line = {"class": j, "members": [x.literal() for x in cls], "image": str(interpret(G, cls[0])),
                "extension": sorted(q.extension_of(j))}
        out.append(json.dumps(line, sort_keys=True, ensure_ascii=False))
    model = sorted({interpret(G, x) for x in q.names})
    out.append(json.dumps({"E": q.relation}, sort_keys=True))
    out.append(json.dumps({"model": [str(s) for s in model]}, sort_keys=True, ensure_ascii=False))
    ext = check_extensionality(q)
    out.append(f"# quotient mode={mode} G={G} names={len(q.names)} classes={len(q.classes)} "
               f"images={len(model)} extensional={str(ext.ok).lower()}")
    return "\n".join(out) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", required=True, help="workspace file")
    common.add_argument("--max-rank", type=int, help="override the name-rank bound")
    common.add_argument("--out", help="write the output here instead of stdout")

    p = argparse.ArgumentParser(prog="starforcing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("value", parents=[common], help="value of a sentence")
    v.add_argument("formula")
    v.add_argument("--mode", default="induced", help="star | induced | alpha:N | fo")
    v.add_argument("--stratum", type=int, help="witness stratum for --mode fo")
    c = sub.add_parser("check", parents=[common], help="run a check suite")
    c.add_argument("--suite", required=True, help=", ".join(sorted(ALL_SUITES)))
    c.add_argument("--ultrafilter", help="restrict to the principal ultrafilter at this atom")
    q = sub.add_parser("quotient", parents=[common], help="quotient model and its M[G] listing")
    q.add_argument("--ultrafilter", required=True)
    q.add_argument("--mode", default=INDUCED, help="star | induced")
    q.add_argument("--names", help="comma separated name ids (default: a whole stratum)")
    q.add_argument("--stratum", type=int)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = load_workspace(args.workspace, args.max_rank)
        if args.command == "value":
            text, code = cmd_value(ws, args.formula, args.mode, args.stratum)
        elif args.command == "check":
            text, code = cmd_check(ws, args.suite, args.ultrafilter)
        else:
            text, code = cmd_quotient(ws, args.ultrafilter, args.mode, args.names, args.stratum)
    except BoundsError as e:
        print(f"starforcing: bounds exceeded: {e}", file=sys.stderr)
        return EXIT_BOUNDS
    except InputError as e:
        print(f"starforcing: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
