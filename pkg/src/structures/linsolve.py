"""
LRJ Calculus Workbench
Fraction-Free Linear Solves

Bareiss elimination over the field of scalar expressions. Pivots are
chosen over the whole remaining block: nonzero constants first, then
entries of lowest total degree.
"""

import logging
from typing import List, Sequence, Tuple

import sympy as sp

from ..cas.expressions import ONE, ZERO, ScalarExpr, normalize
from ..calculus.forms import SkewFormD, component_matrix
from ..calculus.operators import DiffOp
from ..calculus.pfaffian import pfaffian
from .errors import DegenerateError

logger = logging.getLogger(__name__)


def _pivot_key(e: ScalarExpr) -> Tuple[int, int, int]:
    if e.is_Number:
        return (0, 0, sp.count_ops(e))
    num, den = sp.fraction(sp.together(e))
    gens = sorted(e.free_symbols, key=sp.default_sort_key)
    try:
        degree = sp.Poly(num, *gens).total_degree() + sp.Poly(den, *gens).total_degree()
    except sp.PolynomialError:
        degree = 99
    return (1, degree, sp.count_ops(e))


def solve_linear(matrix: Sequence[Sequence[ScalarExpr]], rhs: Sequence[ScalarExpr]) -> List[ScalarExpr]:
    """
    Solve A x = b exactly.

    Args:
        matrix: Square coefficient matrix (rows of expressions)
        rhs: Right-hand side

    Returns:
        Normalized solution vector

    Raises:
        DegenerateError: no nonzero pivot remains
    """
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"solve_linear needs an n x n system, got {n} rows and {len(rhs)} values")
    a = [[normalize(sp.sympify(v)) for v in row] + [normalize(sp.sympify(rhs[i]))]
         for i, row in enumerate(matrix)]
    cols = list(range(n))
    prev = ONE

    for k in range(n):
        candidates = [
            (_pivot_key(a[i][j]), i, j)
            for i in range(k, n) for j in range(k, n) if a[i][j] != ZERO
        ]
        if not candidates:
            raise DegenerateError(f"singular system: no pivot at step {k} of {n}", witness=ZERO)
        _, pi, pj = min(candidates)
        logger.debug("pivot %d at (%d, %d): %s", k, pi, pj, a[pi][pj])
        a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            cols[k], cols[pj] = cols[pj], cols[k]

        pivot = a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k]
            for j in range(k + 1, n + 1):
                a[i][j] = normalize((pivot * a[i][j] - factor * a[k][j]) / prev)
            a[i][k] = ZERO
        prev = pivot

    solution = [ZERO] * n
    for k in reversed(range(n)):
        acc = a[k][n]
        for j in range(k + 1, n):
            acc -= a[k][j] * solution[cols[j]]
        solution[cols[k]] = normalize(acc / a[k][k])
    return solution


def solve_interior(omega: SkewFormD, nu: SkewFormD) -> DiffOp:
    """
    The operator phi with i_phi(omega) = nu.

    Componentwise sum_a phi^a omega(e_a, e_b) = nu_b, a system with
    matrix W^T = -W.
    """
    if omega.degree != 2 or nu.degree != 1:
        raise ValueError("solve_interior needs a 2-form and a 1-form")
    w = component_matrix(omega)
    size = len(w)
    transposed = [[w[b][a] for b in range(size)] for a in range(size)]
    rhs = [nu.component((b,)) for b in range(size)]
    try:
        phi = solve_linear(transposed, rhs)
    except DegenerateError:
        raise DegenerateError("omega is degenerate", witness=pfaffian(omega)) from None
    return DiffOp(omega.chart, phi[0], tuple(phi[1:]))
