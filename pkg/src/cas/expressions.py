"""
LRJ Calculus Workbench
Scalar Expression Engine

Exact scalar fields on a chart, backed by sympy. Constants are exact
rationals; floats only appear during evaluation.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

from ..chart.chart import Chart

logger = logging.getLogger(__name__)

ScalarExpr = sp.Expr
Number = Union[int, Fraction, sp.Rational]

TRANSCENDENTAL = (sp.sin, sp.cos, sp.exp)

ZERO = sp.Integer(0)
ONE = sp.Integer(1)


class EvaluationError(ValueError):
    """Numeric evaluation hit a division by zero or an overflow."""

    def __init__(self, subexpression: ScalarExpr, point: Tuple[float, ...], reason: str = "division by zero"):
        self.subexpression = subexpression
        self.point = point
        super().__init__(f"{reason} in {subexpression} at {point}")


@dataclass(frozen=True)
class NormalForm:
    """A normalized expression with the denominators it silently cancelled."""
    expr: ScalarExpr
    caveats: Tuple[ScalarExpr, ...]


# ---------------------------------------------------------------- construction

def const(value: Number) -> ScalarExpr:
    """Exact rational constant."""
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return sp.Rational(value)


def symbol(name: str) -> sp.Symbol:
    """Coordinate symbol."""
    return sp.Symbol(name)


def div(numerator: ScalarExpr, denominator: ScalarExpr) -> ScalarExpr:
    """Division kept as a node, so ``x/x`` still records ``x != 0``."""
    if denominator == ZERO:
        raise ZeroDivisionError(f"division of {numerator} by the constant 0")
    if denominator.is_Number:
        return numerator / denominator
    return sp.Mul(numerator, sp.Pow(denominator, -1, evaluate=False), evaluate=False)


def power(base: ScalarExpr, exponent: int) -> ScalarExpr:
    """Integer power; negative exponents are recorded divisions."""
    if exponent < 0:
        return div(ONE, sp.Pow(base, -exponent))
    return sp.Pow(base, exponent)


# ------------------------------------------------------------- differentiation

def diff(e: ScalarExpr, coord: Union[sp.Symbol, str]) -> ScalarExpr:
    """Exact partial derivative with respect to a chart coordinate."""
    sym = coord if isinstance(coord, sp.Symbol) else symbol(coord)
    return sp.diff(e, sym)


# --------------------------------------------------------------- normalization

def _has_division(e: ScalarExpr) -> bool:
    return any(p.exp.is_Number and p.exp < 0 for p in e.atoms(sp.Pow))


def _normalize_calls(e: ScalarExpr) -> ScalarExpr:
    return e.replace(
        lambda node: isinstance(node, TRANSCENDENTAL),
        lambda node: node.func(normalize(node.args[0])),
    )


def normalize(e: ScalarExpr) -> ScalarExpr:
    """
    Canonical form of the rational fragment.

    Polynomials are expanded with sorted monomials; rational functions
    become a single cancelled quotient. sin/cos/exp are normalized in
    their arguments and then treated as opaque generators.
    """
    e = sp.sympify(e)
    if e.is_Number:
        return e
    return _canonical(e)


@lru_cache(maxsize=65536)
def _canonical(e: ScalarExpr) -> ScalarExpr:
    if e.has(*TRANSCENDENTAL):
        e = _normalize_calls(e)
    if _has_division(e):
        return sp.cancel(sp.together(e))
    return sp.expand(e)


def domain_caveats(e: ScalarExpr) -> Tuple[ScalarExpr, ...]:
    """Denominators appearing in ``e``; each must be nonzero where ``e`` is used."""
    found = []
    for node in sp.preorder_traversal(e):
        if isinstance(node, sp.Pow) and node.exp.is_Number and node.exp < 0:
            base = normalize(node.base)
            if not base.is_Number and base not in found:
                found.append(base)
    return tuple(sorted(found, key=sp.default_sort_key))


def normal_form(e: ScalarExpr) -> NormalForm:
    """Normalized expression together with its domain caveats."""
    return NormalForm(expr=normalize(e), caveats=domain_caveats(e))


def is_transcendental(e: ScalarExpr) -> bool:
    """True when ``e`` still contains sin, cos or exp nodes."""
    return e.has(*TRANSCENDENTAL)


def is_constant(e: ScalarExpr) -> bool:
    """True when the normal form has no free coordinates."""
    return not normalize(e).free_symbols


# ------------------------------------------------------------------ evaluation

@lru_cache(maxsize=4096)
def _compiled(e: ScalarExpr, symbols: Tuple[sp.Symbol, ...]) -> Callable:
    return sp.lambdify(symbols, e, modules="math")


def _point_for(e: ScalarExpr, point, chart: Optional[Chart]) -> Tuple[Tuple[sp.Symbol, ...], Tuple[float, ...]]:
    if isinstance(point, Mapping):
        names = [k.name if isinstance(k, sp.Symbol) else str(k) for k in point]
        syms = tuple(sp.Symbol(n) for n in names)
        values = tuple(float(v) for v in point.values())
    else:
        if chart is None:
            raise ValueError("a chart is required to evaluate at a positional point")
        if len(point) != chart.dim:
            raise ValueError(f"point has {len(point)} coordinates, chart {chart.name} has {chart.dim}")
        syms = chart.symbols
        values = tuple(float(v) for v in point)
    missing = e.free_symbols - set(syms)
    if missing:
        raise ValueError(f"no value for {sorted(s.name for s in missing)}")
    return syms, values


def _locate_failure(e: ScalarExpr, syms, values) -> ScalarExpr:
    """The first recorded denominator that vanishes at the point, else ``e``."""
    for den in domain_caveats(e):
        try:
            value = _compiled(den, syms)(*values)
        except (ZeroDivisionError, OverflowError, ValueError):
            # a nested denominator vanishes; it is listed on its own
            continue
        if math.isclose(float(value), 0.0, abs_tol=1e-12):
            return den
    return e


def evaluate(e: ScalarExpr, point: Union[Sequence[float], Mapping], chart: Optional[Chart] = None) -> float:
    """
    Numeric value of ``e`` at ``point``.

    Args:
        e: Scalar expression
        point: Coordinates in chart order, or a mapping name -> value
        chart: Chart giving the coordinate order for positional points

    Returns:
        Float value

    Raises:
        EvaluationError: division by zero or overflow at ``point``
    """
    syms, values = _point_for(e, point, chart)
    try:
        value = _compiled(sp.sympify(e), syms)(*values)
    except ZeroDivisionError:
        raise EvaluationError(_locate_failure(e, syms, values), values) from None
    except (OverflowError, ValueError) as exc:
        raise EvaluationError(e, values, reason=str(exc)) from None
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise EvaluationError(_locate_failure(e, syms, values), values, reason="non-finite value")
    return value
