"""Finite Boolean-valued models, *forcing, and the sentence algebra B_form."""

from .boolean_algebra import BoolAlg, BoolElem, Ultrafilter, mk_powerset_algebra
from .errors import BoundsError, DSLSyntaxError, InputError, StarForcingError
from .formula_lang import parse_formula, to_text
from .ground_universe import EMPTY, HFSet, build_hf_universe
from .names import EMPTY_NAME, Name, check_name
from .report import Record, Report
from .star_forcing import Bounds, Workspace
from .workspace_file import load_workspace, parse_workspace

__version__ = "0.1.0"

__all__ = [
    "BoolAlg", "BoolElem", "Ultrafilter", "mk_powerset_algebra",
    "BoundsError", "DSLSyntaxError", "InputError", "StarForcingError",
    "parse_formula", "to_text", "EMPTY", "HFSet", "build_hf_universe",
    "EMPTY_NAME", "Name", "check_name", "Record", "Report", "Bounds", "Workspace",
    "load_workspace", "parse_workspace",
]
