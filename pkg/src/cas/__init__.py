"""CAS module initialization."""
from .expressions import (
    ScalarExpr, NormalForm, EvaluationError, ZERO, ONE,
    const, symbol, div, power, diff, normalize, normal_form,
    domain_caveats, is_transcendental, is_constant, evaluate
)
from .zero_test import ZeroKind, ZeroGrade, is_zero, weakest

__all__ = [
    "ScalarExpr", "NormalForm", "EvaluationError", "ZERO", "ONE",
    "const", "symbol", "div", "power", "diff", "normalize", "normal_form",
    "domain_caveats", "is_transcendental", "is_constant", "evaluate",
    "ZeroKind", "ZeroGrade", "is_zero", "weakest"
]
