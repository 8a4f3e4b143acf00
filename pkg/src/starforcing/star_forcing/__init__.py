"""Boolean-valued values, quotients, extensions and the check suites over a workspace."""

from .constructions import check_zfc, replacement_image_name, separation_name, union_name
from .firstorder import FOValue, check_star_complete, find_nonreflecting, reflects, value_alpha, value_fo
from .quotient import INDUCED, STAR, QuotientModel, check_extensionality, check_forcing_theorem, check_isomorphism, quotient_model
from .suites import SUITES
from .values import ValueCache, interpret, truth_in_extension, value_atomic, value_G_pred, value_qf, value_star
from .workspace import Bounds, Workspace

__all__ = [
    "check_zfc", "replacement_image_name", "separation_name", "union_name",
    "FOValue", "check_star_complete", "find_nonreflecting", "reflects", "value_alpha", "value_fo",
    "INDUCED", "STAR", "QuotientModel", "check_extensionality", "check_forcing_theorem", "check_isomorphism",
    "quotient_model", "SUITES",
    "ValueCache", "interpret", "truth_in_extension", "value_atomic", "value_G_pred", "value_qf", "value_star",
    "Bounds", "Workspace",
]
