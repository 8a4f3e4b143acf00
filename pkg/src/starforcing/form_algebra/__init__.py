"""The sentence algebra B_form and the reconstruction of M[H] as an extension by it."""

from .bdd import FORM_ALGEBRA, ONE, ZERO, BFormElem, bform_complement, bform_product, bform_sum, canonical_form
from .checks import check_bform_soundness, check_h_laws, check_mh_equality
from .semantics import H_SYMBOL, HModel, HUltrafilter, build_L_hierarchy, interpret_H, ultrafilter_H
from .tilde import EMPTY_TILDE, TildeBounds, TildeName, TildeSpace
from .translate import Translator, asn, translate_I

__all__ = [
    "FORM_ALGEBRA", "ONE", "ZERO", "BFormElem", "bform_complement", "bform_product", "bform_sum", "canonical_form",
    "check_bform_soundness", "check_h_laws", "check_mh_equality",
    "H_SYMBOL", "HModel", "HUltrafilter", "build_L_hierarchy", "interpret_H", "ultrafilter_H",
    "EMPTY_TILDE", "TildeBounds", "TildeName", "TildeSpace",
    "Translator", "asn", "translate_I",
]
