"""
LRJ Calculus Workbench
Coboundaries and Lie Derivatives

delta is the Chevalley-Eilenberg coboundary of D(M) for the identity
anchor, delta_alpha = delta + alpha ^ (.) its twisted version, and
theta the Lie derivative i_phi delta_alpha + delta_alpha i_phi.
"""

from itertools import combinations
from typing import Dict

from ..cas.expressions import ZERO, ScalarExpr, diff, normalize
from .forms import Index, SkewFormD, XForm, evaluate, interior, wedge
from .operators import DiffOp, FormError, apply, bracket, same_chart


def delta(eta: SkewFormD) -> SkewFormD:
    """
    Coboundary for the identity anchor.

    Basis brackets vanish, so only the anchor terms survive:
    (delta eta)_{i_0..i_p} = sum_k (-1)^k rho(e_{i_k}) eta_{..no i_k..},
    with rho(e_0) = id and rho(e_i) = d/dx^i.
    """
    chart = eta.chart
    acc: Dict[Index, ScalarExpr] = {}
    for key in combinations(range(chart.dim + 1), eta.degree + 1):
        total = ZERO
        for k, a in enumerate(key):
            coeff = eta.components.get(key[:k] + key[k + 1:])
            if coeff is None:
                continue
            term = coeff if a == 0 else diff(coeff, chart.symbols[a - 1])
            total += (-1) ** k * term
        if total != ZERO:
            acc[key] = total
    return SkewFormD(chart, eta.degree + 1, acc)


def delta_alpha(eta: SkewFormD, alpha: SkewFormD) -> SkewFormD:
    """delta eta + alpha ^ eta."""
    if alpha.degree != 1:
        raise FormError(f"alpha must have degree 1, got {alpha.degree}")
    return delta(eta) + wedge(alpha, eta)


def rho_alpha(phi: DiffOp, alpha: SkewFormD) -> DiffOp:
    """The operator phi + alpha(phi)."""
    return DiffOp(phi.chart, phi.scalar + evaluate(alpha, phi), phi.vec)


def rho_alpha_apply(phi: DiffOp, alpha: SkewFormD, f: ScalarExpr) -> ScalarExpr:
    """rho_alpha(phi)(f) = phi(f) + f * alpha(phi)."""
    return normalize(apply(phi, f) + f * evaluate(alpha, phi))


def theta(phi: DiffOp, alpha: SkewFormD, eta: SkewFormD) -> SkewFormD:
    """Lie derivative i_phi delta_alpha + delta_alpha i_phi."""
    same_chart(phi, eta)
    first = interior(phi, delta_alpha(eta, alpha))
    if eta.degree == 0:
        return first
    return first + delta_alpha(interior(phi, eta), alpha)


def exterior_d(beta: SkewFormD) -> XForm:
    """Classical exterior derivative of a form on X(M)."""
    beta = beta.as_xform() if not isinstance(beta, XForm) else beta
    chart = beta.chart
    acc: Dict[Index, ScalarExpr] = {}
    for key in combinations(range(1, chart.dim + 1), beta.degree + 1):
        total = ZERO
        for k, a in enumerate(key):
            coeff = beta.components.get(key[:k] + key[k + 1:])
            if coeff is not None:
                total += (-1) ** k * diff(coeff, chart.symbols[a - 1])
        if total != ZERO:
            acc[key] = total
    return XForm(chart, beta.degree + 1, acc)


def chevalley_eilenberg(eta: SkewFormD, alpha: SkewFormD, *phis: DiffOp) -> ScalarExpr:
    """
    Chevalley-Eilenberg sum for the anchor rho_alpha, on arbitrary operators.

    sum_i (-1)^i rho_alpha(phi_i)[eta(.. no phi_i ..)]
      + sum_{i<j} (-1)^{i+j} eta([phi_i, phi_j], .. no phi_i, phi_j ..)
    """
    if len(phis) != eta.degree + 1:
        raise FormError(f"coboundary of a degree-{eta.degree} form takes {eta.degree + 1} arguments")
    total = ZERO
    for i, phi in enumerate(phis):
        rest = phis[:i] + phis[i + 1:]
        total += (-1) ** i * rho_alpha_apply(phi, alpha, evaluate(eta, *rest))
    for i, j in combinations(range(len(phis)), 2):
        rest = tuple(p for k, p in enumerate(phis) if k not in (i, j))
        total += (-1) ** (i + j) * evaluate(eta, bracket(phis[i], phis[j]), *rest)
    return normalize(total)
