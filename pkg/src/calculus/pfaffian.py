"""
LRJ Calculus Workbench
Pfaffians

Nondegeneracy witness for 2-forms: a skew matrix of even size is
invertible exactly where its Pfaffian is nonzero.
"""

from typing import Dict, Sequence, Tuple

import sympy as sp

from ..cas.expressions import ONE, ZERO, ScalarExpr, normalize
from .forms import SkewFormD, component_matrix
from .operators import FormError


def pfaffian_of(matrix: Sequence[Sequence[ScalarExpr]]) -> ScalarExpr:
    """
    Pfaffian of a skew-symmetric matrix, by expansion along the first row.

    Pf(A) = sum_{j>0} (-1)^(j+1) a_{0j} Pf(A without rows/cols 0, j)
    (zero-based, so the sign alternates starting with +).

    Args:
        matrix: Square skew-symmetric list-of-lists

    Returns:
        Normalized Pfaffian; 0 for odd sizes, 1 for the empty matrix
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise FormError("Pfaffian needs a square matrix")
    if size % 2:
        return ZERO
    memo: Dict[Tuple[int, ...], ScalarExpr] = {}

    def expand(items: Tuple[int, ...]) -> ScalarExpr:
        if not items:
            return ONE
        if items in memo:
            return memo[items]
        first, rest = items[0], items[1:]
        total = ZERO
        for k, j in enumerate(rest):
            entry = sp.sympify(matrix[first][j])
            if entry == ZERO:
                continue
            total += (-1) ** k * entry * expand(rest[:k] + rest[k + 1:])
        memo[items] = total
        return total

    return normalize(expand(tuple(range(size))))


def pfaffian(omega: SkewFormD) -> ScalarExpr:
    """Pfaffian of the (n+1)x(n+1) component matrix; 0 when n+1 is odd."""
    if omega.degree != 2:
        raise FormError(f"Pfaffian needs a 2-form, got degree {omega.degree}")
    if (omega.chart.dim + 1) % 2:
        return ZERO
    return pfaffian_of(component_matrix(omega))
