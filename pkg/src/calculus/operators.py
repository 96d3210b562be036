"""
LRJ Calculus Workbench
First-Order Differential Operators

An element of D(M) on a chart: phi = phi(1)*unit + sum v^i d/dx^i.
Index 0 of the extended basis is the unit operator, index i >= 1 is the
i-th coordinate derivation.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import sympy as sp

from ..cas.expressions import ONE, ZERO, ScalarExpr, diff, normalize
from ..chart.chart import Chart

Scalar = Union[ScalarExpr, int]


class FormError(ValueError):
    """Operands live on different charts or have incompatible degrees."""


def same_chart(*objects) -> Chart:
    """Shared chart of the operands, or FormError."""
    chart = objects[0].chart
    for obj in objects[1:]:
        if obj.chart != chart:
            raise FormError(f"operands live on charts {chart.name} and {obj.chart.name}")
    return chart


@dataclass(frozen=True, eq=False)
class DiffOp:
    """A first-order differential operator with normalized components."""
    chart: Chart
    scalar: ScalarExpr
    vec: Tuple[ScalarExpr, ...]

    def __post_init__(self):
        vec = tuple(normalize(sp.sympify(v)) for v in self.vec)
        if len(vec) != self.chart.dim:
            raise FormError(f"operator has {len(vec)} vector components on a {self.chart.dim}-chart")
        object.__setattr__(self, "vec", vec)
        object.__setattr__(self, "scalar", normalize(sp.sympify(self.scalar)))

    # -- constructors
    @classmethod
    def zero(cls, chart: Chart) -> "DiffOp":
        return cls(chart, ZERO, (ZERO,) * chart.dim)

    @classmethod
    def unit(cls, chart: Chart) -> "DiffOp":
        """Multiplication by the constant function 1."""
        return cls(chart, ONE, (ZERO,) * chart.dim)

    @classmethod
    def multiplication(cls, chart: Chart, f: Scalar) -> "DiffOp":
        return cls(chart, f, (ZERO,) * chart.dim)

    @classmethod
    def partial(cls, chart: Chart, coord) -> "DiffOp":
        """The coordinate derivation d/d<coord>."""
        i = chart.index(coord)
        return cls(chart, ZERO, tuple(ONE if j == i else ZERO for j in range(chart.dim)))

    @classmethod
    def vector_field(cls, chart: Chart, components: Sequence[Scalar]) -> "DiffOp":
        return cls(chart, ZERO, tuple(components))

    @classmethod
    def basis(cls, chart: Chart, index: int) -> "DiffOp":
        """Extended basis element: 0 is the unit, i >= 1 is d/dx^i."""
        if index == 0:
            return cls.unit(chart)
        return cls(chart, ZERO, tuple(ONE if j == index - 1 else ZERO for j in range(chart.dim)))

    # -- access
    def component(self, index: int) -> ScalarExpr:
        """Coefficient on the extended basis element ``index``."""
        return self.scalar if index == 0 else self.vec[index - 1]

    @property
    def components(self) -> Tuple[ScalarExpr, ...]:
        return (self.scalar,) + self.vec

    @property
    def is_vector_field(self) -> bool:
        return self.scalar == ZERO

    def vector_part(self) -> "DiffOp":
        return DiffOp(self.chart, ZERO, self.vec)

    # -- arithmetic
    def __add__(self, other: "DiffOp") -> "DiffOp":
        same_chart(self, other)
        return DiffOp(self.chart, self.scalar + other.scalar,
                      tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> "DiffOp":
        return self.scale(-1)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, f: Scalar) -> "DiffOp":
        """Pointwise multiple f*phi."""
        return DiffOp(self.chart, f * self.scalar, tuple(f * v for v in self.vec))

    def __rmul__(self, f: Scalar) -> "DiffOp":
        return self.scale(f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    __hash__ = None

    def __repr__(self) -> str:
        parts = [str(self.scalar)] if self.scalar != ZERO else []
        for name, v in zip(self.chart.coords, self.vec):
            if v != ZERO:
                parts.append(f"({v})*d/d{name}")
        return "DiffOp(" + (" + ".join(parts) or "0") + ")"


def derive(chart: Chart, components: Sequence[ScalarExpr], f: ScalarExpr) -> ScalarExpr:
    """Action of the vector field with the given components on f."""
    total = ZERO
    for sym, v in zip(chart.symbols, components):
        if v != ZERO:
            total += v * diff(f, sym)
    return total


def apply(phi: DiffOp, f: Scalar) -> ScalarExpr:
    """phi(f) = f*phi(1) + X(f)."""
    f = sp.sympify(f)
    return normalize(f * phi.scalar + derive(phi.chart, phi.vec, f))


def bracket(phi: DiffOp, psi: DiffOp) -> DiffOp:
    """
    Commutator of two operators.

    With phi = (s, v) and psi = (t, w): scalar part v(t) - w(s), vector
    part the Lie bracket [v, w].
    """
    chart = same_chart(phi, psi)
    scalar = derive(chart, phi.vec, psi.scalar) - derive(chart, psi.vec, phi.scalar)
    vec = tuple(
        derive(chart, phi.vec, w_j) - derive(chart, psi.vec, v_j)
        for v_j, w_j in zip(phi.vec, psi.vec)
    )
    return DiffOp(chart, scalar, vec)
