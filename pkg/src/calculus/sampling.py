"""
LRJ Calculus Workbench
Random Test Data

Seeded generators of polynomial scalars, operators and forms. Used by
the self-test suites and by the randomized module checks.
"""

from itertools import product
from typing import List, Optional, Tuple

import numpy as np
import sympy as sp

from ..cas.expressions import ZERO, ScalarExpr, normalize
from ..chart.chart import Chart
from .forms import AlphaForm, SkewFormD, XForm, increasing_tuples, lift_xform, unit_form
from .operators import DiffOp
from .coboundary import exterior_d


class RandomSource:
    """Deterministic generator of polynomial data on a chart."""

    def __init__(
        self,
        chart: Chart,
        seed: int = 0,
        max_degree: int = 2,
        coefficient_bound: int = 3,
        density: float = 0.5,
    ):
        """
        Args:
            chart: Chart the generated objects live on
            seed: numpy seed
            max_degree: Largest total degree of generated monomials
            coefficient_bound: Integer coefficients drawn from [-bound, bound]
            density: Probability of keeping each monomial / component
        """
        self.chart = chart
        self.rng = np.random.default_rng(seed)
        self.max_degree = max_degree
        self.coefficient_bound = coefficient_bound
        self.density = density
        self._exponents: List[Tuple[int, ...]] = [
            e for e in product(range(max_degree + 1), repeat=chart.dim) if sum(e) <= max_degree
        ]

    def coefficient(self) -> sp.Integer:
        """A nonzero integer in [-bound, bound]."""
        value = int(self.rng.integers(1, self.coefficient_bound + 1))
        return sp.Integer(value if self.rng.random() < 0.5 else -value)

    def constant(self) -> sp.Rational:
        """A small rational constant, possibly zero."""
        num = int(self.rng.integers(-self.coefficient_bound, self.coefficient_bound + 1))
        den = int(self.rng.integers(1, 3))
        return sp.Rational(num, den)

    def polynomial(self, max_degree: Optional[int] = None) -> ScalarExpr:
        """Random polynomial of total degree at most ``max_degree``."""
        limit = self.max_degree if max_degree is None else max_degree
        total = ZERO
        for exps in self._exponents:
            if sum(exps) > limit or self.rng.random() >= self.density:
                continue
            term = self.coefficient()
            for sym, k in zip(self.chart.symbols, exps):
                term *= sym ** k
            total += term
        return normalize(total)

    def nonconstant_polynomial(self) -> ScalarExpr:
        """Random polynomial guaranteed to involve a coordinate."""
        while True:
            sym = self.chart.symbols[int(self.rng.integers(0, self.chart.dim))]
            candidate = normalize(self.polynomial() + self.coefficient() * sym)
            if candidate.free_symbols:
                return candidate

    def diffop(self) -> DiffOp:
        return DiffOp(self.chart, self.polynomial(), tuple(self.polynomial() for _ in range(self.chart.dim)))

    def vector_field(self) -> DiffOp:
        return DiffOp.vector_field(self.chart, [self.polynomial() for _ in range(self.chart.dim)])

    def form(self, degree: int, on_x: bool = False) -> SkewFormD:
        """Random form of a degree, optionally annihilating the unit."""
        comps = {
            key: self.polynomial()
            for key in increasing_tuples(self.chart, degree, with_unit=not on_x)
            if self.rng.random() < self.density or degree == 0
        }
        if on_x:
            return XForm(self.chart, degree, comps)
        return SkewFormD(self.chart, degree, comps)

    def exact_xform(self) -> XForm:
        """df for a random polynomial f."""
        f = SkewFormD(self.chart, 0, {(): self.polynomial(self.max_degree + 1)})
        return exterior_d(f.as_xform())

    def admissible_alpha(self) -> AlphaForm:
        """c*delta(1) + lift(df): constant alpha(1) and closed restriction."""
        c = self.constant()
        return (unit_form(self.chart).scale(c) + lift_xform(self.exact_xform())).as_alpha()

    def alpha_nonconstant_unit(self) -> AlphaForm:
        """Closed restriction but alpha(1) depends on the point."""
        base = unit_form(self.chart).scale(self.nonconstant_polynomial())
        return (base + lift_xform(self.exact_xform())).as_alpha()

    def alpha_nonclosed(self) -> AlphaForm:
        """Constant alpha(1) but d(alpha|X) != 0 (needs dim >= 2)."""
        if self.chart.dim < 2:
            raise ValueError("a non-closed 1-form needs at least two coordinates")
        i, j = (int(v) for v in self.rng.choice(self.chart.dim, size=2, replace=False))
        twist = XForm(self.chart, 1, {(i + 1,): self.coefficient() * self.chart.symbols[j]})
        alpha = self.admissible_alpha() + lift_xform(twist)
        return alpha.as_alpha()
