"""
LRJ Calculus Workbench
Skew-Symmetric Forms on D(M)

Forms are stored by components over the extended basis
{unit, d/dx^1, ..., d/dx^n}: a degree-p form is a map from strictly
increasing p-tuples over {0..n} to scalar expressions. Evaluation on
arbitrary operators expands multilinearly, so C-infinity linearity
holds by construction.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy as sp
from sympy.combinatorics import Permutation

from ..cas.expressions import ONE, ZERO, ScalarExpr, normalize
from ..chart.chart import Chart
from .operators import DiffOp, FormError, Scalar, same_chart

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]

# debug switch used by the self-test to prove it notices a broken wedge
_ignore_wedge_sign: ContextVar[bool] = ContextVar("ignore_wedge_sign", default=False)


@contextmanager
def broken_wedge_sign() -> Iterator[None]:
    """Within the block, wedge drops the shuffle sign."""
    token = _ignore_wedge_sign.set(True)
    try:
        yield
    finally:
        _ignore_wedge_sign.reset(token)


def sort_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting ``indices`` (0 on repeats)."""
    if len(set(indices)) != len(indices):
        return 0
    if len(indices) < 2:
        return 1
    order = sorted(range(len(indices)), key=lambda k: indices[k])
    return Permutation(order).signature()


@dataclass(frozen=True, eq=False)
class SkewFormD:
    """A degree-p skew-symmetric multilinear form on D(M)."""
    chart: Chart
    degree: int
    components: Mapping[Index, ScalarExpr]

    def __post_init__(self):
        if self.degree < 0:
            raise FormError(f"negative degree {self.degree}")
        top = self.chart.dim
        cleaned: Dict[Index, ScalarExpr] = {}
        for key, value in self.components.items():
            key = tuple(int(k) for k in key)
            if len(key) != self.degree:
                raise FormError(f"component {key} does not have degree {self.degree}")
            if any(k < 0 or k > top for k in key):
                raise FormError(f"component {key} out of range 0..{top}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise FormError(f"component {key} is not strictly increasing")
            value = normalize(sp.sympify(value))
            if value != ZERO:
                cleaned[key] = value
        object.__setattr__(self, "components", dict(sorted(cleaned.items())))
        self._validate()

    def _validate(self) -> None:
        pass

    # -- constructors
    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "SkewFormD":
        return cls(chart, degree, {})

    @classmethod
    def from_signed(cls, chart: Chart, degree: int, entries: Mapping[Index, ScalarExpr]) -> "SkewFormD":
        """Build from components keyed by unordered tuples, sorting with signs."""
        acc: Dict[Index, ScalarExpr] = {}
        for key, value in entries.items():
            sign = sort_sign(key)
            if sign:
                k = tuple(sorted(key))
                acc[k] = acc.get(k, ZERO) + sign * value
        return cls(chart, degree, acc)

    # -- access
    def component(self, indices: Sequence[int]) -> ScalarExpr:
        """Value on basis elements in any order."""
        sign = sort_sign(indices)
        if not sign:
            return ZERO
        return sign * self.components.get(tuple(sorted(indices)), ZERO)

    @property
    def scalar(self) -> ScalarExpr:
        """The function of a degree-0 form."""
        if self.degree != 0:
            raise FormError(f"degree-{self.degree} form has no scalar value")
        return self.components.get((), ZERO)

    def is_zero_form(self) -> bool:
        """True when every component normalized to 0."""
        return not self.components

    def as_xform(self) -> "XForm":
        return XForm(self.chart, self.degree, self.components)

    def as_alpha(self) -> "AlphaForm":
        return AlphaForm(self.chart, self.degree, self.components)

    def as_plain(self) -> "SkewFormD":
        return SkewFormD(self.chart, self.degree, self.components)

    # -- arithmetic
    def _check_compatible(self, other: "SkewFormD") -> None:
        same_chart(self, other)
        if other.degree != self.degree:
            raise FormError(f"cannot add forms of degrees {self.degree} and {other.degree}")

    def __add__(self, other: "SkewFormD") -> "SkewFormD":
        self._check_compatible(other)
        merged = dict(self.components)
        for key, value in other.components.items():
            merged[key] = merged.get(key, ZERO) + value
        return SkewFormD(self.chart, self.degree, merged)

    def __neg__(self) -> "SkewFormD":
        return self.scale(-1)

    def __sub__(self, other: "SkewFormD") -> "SkewFormD":
        return self + (-other)

    def scale(self, f: Scalar) -> "SkewFormD":
        """Pointwise multiple f*eta."""
        f = sp.sympify(f)
        return SkewFormD(self.chart, self.degree, {k: f * v for k, v in self.components.items()})

    def __rmul__(self, f: Scalar) -> "SkewFormD":
        return self.scale(f)

    def __xor__(self, other: "SkewFormD") -> "SkewFormD":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewFormD):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self.components == other.components)

    __hash__ = None

    def __repr__(self) -> str:
        names = ("u",) + tuple(f"d{c}" for c in self.chart.coords)
        terms = [
            f"({v})*" + "^".join(names[i] for i in key) if key else f"({v})"
            for key, v in self.components.items()
        ]
        return f"{type(self).__name__}[{self.degree}](" + (" + ".join(terms) or "0") + ")"


class XForm(SkewFormD):
    """A form annihilating the unit operator in every slot."""

    def _validate(self) -> None:
        for key in self.components:
            if 0 in key:
                raise FormError(f"form on X has a component {key} involving the unit operator")


class AlphaForm(SkewFormD):
    """A linear form alpha on D(M)."""

    def _validate(self) -> None:
        if self.degree != 1:
            raise FormError(f"alpha must have degree 1, got {self.degree}")

    @property
    def unit_value(self) -> ScalarExpr:
        """alpha(1)."""
        return self.components.get((0,), ZERO)


# ------------------------------------------------------------------ basics

def scalar_form(chart: Chart, f: Scalar) -> SkewFormD:
    """The degree-0 form f."""
    return SkewFormD(chart, 0, {(): f})


def unit_form(chart: Chart) -> AlphaForm:
    """delta(1): phi -> phi(1), the covector dual to the unit operator."""
    return AlphaForm(chart, 1, {(0,): ONE})


def basis_covector(chart: Chart, index: int) -> SkewFormD:
    """Dual covector of the extended basis element ``index`` (0 gives delta(1))."""
    return SkewFormD(chart, 1, {(index,): ONE})


def coordinate_differential(chart: Chart, coord) -> XForm:
    """dx for a chart coordinate."""
    return XForm(chart, 1, {(chart.index(coord) + 1,): ONE})


def evaluate(eta: SkewFormD, *phis: DiffOp) -> ScalarExpr:
    """
    Value of eta on the given operators.

    Args:
        eta: Form of degree p
        *phis: Exactly p operators on the same chart

    Returns:
        Normalized scalar expression
    """
    if len(phis) != eta.degree:
        raise FormError(f"degree-{eta.degree} form evaluated on {len(phis)} arguments")
    if phis:
        same_chart(eta, *phis)
    if eta.degree == 0:
        return eta.scalar
    total = ZERO
    for key, coeff in eta.components.items():
        det = ZERO
        for perm in permutations(range(eta.degree)):
            term = sp.Integer(Permutation(list(perm)).signature())
            for slot, k in enumerate(perm):
                term *= phis[slot].component(key[k])
                if term == ZERO:
                    break
            det += term
        total += coeff * det
    return normalize(total)


def wedge(eta: SkewFormD, zeta: SkewFormD) -> SkewFormD:
    """
    Exterior product in the shuffle convention (no factorials).

    (eta ^ zeta)(x_1..x_{p+q}) sums sign * eta(..) * zeta(..) over the
    (p,q)-shuffles.
    """
    chart = same_chart(eta, zeta)
    degree = eta.degree + zeta.degree
    signed = not _ignore_wedge_sign.get()
    acc: Dict[Index, ScalarExpr] = {}
    for left, a in eta.components.items():
        for right, b in zeta.components.items():
            sign = sort_sign(left + right)
            if not sign:
                continue
            key = tuple(sorted(left + right))
            acc[key] = acc.get(key, ZERO) + (sign if signed else 1) * a * b
    return SkewFormD(chart, degree, acc)


def wedge_power(omega: SkewFormD, k: int) -> SkewFormD:
    """omega ^ ... ^ omega (k factors); the constant 1 for k = 0."""
    if k < 0:
        raise FormError(f"negative wedge power {k}")
    result = scalar_form(omega.chart, ONE)
    for _ in range(k):
        result = wedge(result, omega)
    return result


def interior(phi: DiffOp, eta: SkewFormD) -> SkewFormD:
    """
    Contraction of phi into the first slot.

    Contracting into a function gives the zero function: the result of a
    degree-0 form is SkewFormD.zero(chart, 0), not a degree -1 object. Callers
    combining i_phi(eta) with forms built from eta must treat degree 0 apart.
    """
    chart = same_chart(phi, eta)
    if eta.degree == 0:
        return SkewFormD.zero(chart, 0)
    acc: Dict[Index, ScalarExpr] = {}
    for key, coeff in eta.components.items():
        for pos, a in enumerate(key):
            weight = phi.component(a)
            if weight == ZERO:
                continue
            rest = key[:pos] + key[pos + 1:]
            acc[rest] = acc.get(rest, ZERO) + (-1) ** pos * weight * coeff
    return SkewFormD(chart, eta.degree - 1, acc)


def restrict_to_X(eta: SkewFormD) -> XForm:
    """Restriction to vector fields: drop components involving the unit."""
    return XForm(eta.chart, eta.degree,
                 {k: v for k, v in eta.components.items() if 0 not in k})


def lift_xform(beta: SkewFormD) -> SkewFormD:
    """
    beta composed with the projection D(M) -> X(M), phi -> phi - phi(1).

    The lift vanishes on the unit and agrees with beta on vector fields.
    """
    return SkewFormD(beta.chart, beta.degree, restrict_to_X(beta).components)


def component_matrix(omega: SkewFormD, basis: Optional[Sequence[DiffOp]] = None) -> List[List[ScalarExpr]]:
    """
    Matrix W[a][b] = omega(e_a, e_b) of a 2-form.

    Args:
        omega: Degree-2 form
        basis: Operators to evaluate on (default: the extended basis)

    Returns:
        Square list-of-lists of normalized expressions
    """
    if omega.degree != 2:
        raise FormError(f"component matrix needs a 2-form, got degree {omega.degree}")
    if basis is None:
        size = omega.chart.dim + 1
        return [[omega.component((a, b)) for b in range(size)] for a in range(size)]
    return [[evaluate(omega, a, b) for b in basis] for a in basis]


def top_coefficient(eta: SkewFormD) -> ScalarExpr:
    """Single coefficient of a top-degree form on X(M)."""
    n = eta.chart.dim
    if eta.degree != n:
        raise FormError(f"top X-form on a {n}-chart must have degree {n}, got {eta.degree}")
    return eta.components.get(tuple(range(1, n + 1)), ZERO)


def increasing_tuples(chart: Chart, degree: int, with_unit: bool = True) -> List[Index]:
    """All basis index tuples of a degree on the chart."""
    start = 0 if with_unit else 1
    return list(combinations(range(start, chart.dim + 1), degree))
