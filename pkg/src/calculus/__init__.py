"""Calculus module initialization."""
from .operators import DiffOp, FormError, apply, bracket
from .forms import (
    SkewFormD, XForm, AlphaForm, evaluate, wedge, wedge_power, interior,
    restrict_to_X, lift_xform, scalar_form, unit_form, basis_covector,
    coordinate_differential, component_matrix, top_coefficient, broken_wedge_sign
)
from .coboundary import (
    delta, delta_alpha, rho_alpha, rho_alpha_apply, theta, exterior_d, chevalley_eilenberg
)
from .pfaffian import pfaffian, pfaffian_of
from .sampling import RandomSource

__all__ = [
    "DiffOp", "FormError", "apply", "bracket",
    "SkewFormD", "XForm", "AlphaForm", "evaluate", "wedge", "wedge_power", "interior",
    "restrict_to_X", "lift_xform", "scalar_form", "unit_form", "basis_covector",
    "coordinate_differential", "component_matrix", "top_coefficient", "broken_wedge_sign",
    "delta", "delta_alpha", "rho_alpha", "rho_alpha_apply", "theta", "exterior_d",
    "chevalley_eilenberg", "pfaffian", "pfaffian_of", "RandomSource"
]
