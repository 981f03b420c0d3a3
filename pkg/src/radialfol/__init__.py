"""Exact blow-ups, resolution checks and radiality certificates for
holomorphic foliations given by polynomial 1-forms."""
from .algebra import MPoly, PolyMap, RatFunc, parse_poly, resultant
from .blowup import CenterSpec, blowup, classify_monoidal, log_generic_order
from .charts import DivisorComponent, FoliatedChart
from .driver import (
    ResolutionScript,
    apply_script,
    classify_foliated_germ,
    detect_open_book,
    verify_resolved,
)
from .forms import OneForm, check_integrability, exterior_derivative, pullback, wedge
from .projective import solve_radial_diophantine, tube_transition_audit
from .surfaces import baum_bott_index, camacho_sad_index, is_cart_wheel

__all__ = [
    "MPoly", "PolyMap", "RatFunc", "parse_poly", "resultant",
    "CenterSpec", "blowup", "classify_monoidal", "log_generic_order",
    "DivisorComponent", "FoliatedChart",
    "ResolutionScript", "apply_script", "classify_foliated_germ", "detect_open_book", "verify_resolved",
    "OneForm", "check_integrability", "exterior_derivative", "pullback", "wedge",
    "solve_radial_diophantine", "tube_transition_audit",
    "baum_bott_index", "camacho_sad_index", "is_cart_wheel",
]
