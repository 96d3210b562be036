"""
LRJ Calculus Workbench
.geo Document Model

A parsed document: one chart, then bindings, structure declarations and
check directives in source order. Values are already evaluated into
scalars, operators and forms.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from ..cas.expressions import ScalarExpr, normalize
from ..calculus.forms import SkewFormD
from ..calculus.operators import DiffOp
from ..chart.chart import Chart
from ..structures.contact import ContactData
from ..structures.lcs import LcsData
from ..structures.lrj import LrjData

Value = Union[ScalarExpr, DiffOp, SkewFormD]

STRUCTURE_KEYS = {
    "lcs": ("alpha", "omega"),
    "contact": ("beta", "Omega", "E"),
    "lrj": ("alpha", "omega"),
    "lift": ("contact", "c", "g"),
}

CHECK_FLAGS = ("reeb", "classify", "volume", "modules", "exactness")


def values_equal(a, b) -> bool:
    """Equality of evaluated values after normalization."""
    for kind in (SkewFormD, DiffOp):
        if isinstance(a, kind) or isinstance(b, kind):
            return isinstance(a, kind) and isinstance(b, kind) and a == b
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    return normalize(sp.sympify(a) - sp.sympify(b)) == 0


@dataclass
class Binding:
    """``scalar``, ``field``, ``op`` or ``form`` declaration."""
    kind: str
    name: str
    value: Value
    degree: Optional[int] = None
    on: Optional[str] = None
    line: int = 0

    def same_as(self, other: "Binding") -> bool:
        return (self.kind, self.name, self.degree, self.on) == (other.kind, other.name, other.degree, other.on) \
            and values_equal(self.value, other.value)


@dataclass
class Entry:
    """A structure field: its value and the binding name it came from, if any."""
    value: Union[Value, str]
    ref: Optional[str] = None


@dataclass
class StructureDecl:
    """``lcs``, ``contact``, ``lrj`` or ``lift`` declaration."""
    kind: str
    name: str
    entries: Dict[str, Entry]
    line: int = 0

    def value(self, key: str):
        return self.entries[key].value

    def same_as(self, other: "StructureDecl") -> bool:
        if (self.kind, self.name) != (other.kind, other.name) or self.entries.keys() != other.entries.keys():
            return False
        return all(values_equal(self.value(k), other.value(k)) for k in self.entries)


@dataclass
class CheckDirective:
    """``check NAME with ...`` directive."""
    target: str
    flags: List[str] = field(default_factory=list)
    brackets: List[Tuple[ScalarExpr, ScalarExpr]] = field(default_factory=list)
    jacobi: List[Tuple[ScalarExpr, ScalarExpr, ScalarExpr]] = field(default_factory=list)
    hamiltonians: List[ScalarExpr] = field(default_factory=list)
    samples: Optional[int] = None
    seed: Optional[int] = None
    tolerance: Optional[float] = None
    line: int = 0

    def same_as(self, other: "CheckDirective") -> bool:
        def exprs_equal(xs: Sequence, ys: Sequence) -> bool:
            return len(xs) == len(ys) and all(
                len(a) == len(b) and all(values_equal(p, q) for p, q in zip(a, b)) for a, b in zip(xs, ys)
            )
        return (
            self.target == other.target
            and sorted(self.flags) == sorted(other.flags)
            and exprs_equal(self.brackets, other.brackets)
            and exprs_equal(self.jacobi, other.jacobi)
            and exprs_equal([(h,) for h in self.hamiltonians], [(h,) for h in other.hamiltonians])
            and (self.samples, self.seed, self.tolerance) == (other.samples, other.seed, other.tolerance)
        )


Item = Union[Binding, StructureDecl, CheckDirective]


@dataclass
class GeoDocument:
    """A parsed ``.geo`` file."""
    chart: Chart
    items: List[Item] = field(default_factory=list)

    @property
    def bindings(self) -> List[Binding]:
        return [i for i in self.items if isinstance(i, Binding)]

    @property
    def structures(self) -> List[StructureDecl]:
        return [i for i in self.items if isinstance(i, StructureDecl)]

    @property
    def checks(self) -> List[CheckDirective]:
        return [i for i in self.items if isinstance(i, CheckDirective)]

    def binding(self, name: str) -> Binding:
        for b in self.bindings:
            if b.name == name:
                return b
        raise KeyError(name)

    def structure(self, name: str) -> StructureDecl:
        for s in self.structures:
            if s.name == name:
                return s
        raise KeyError(name)

    # -- building domain objects
    def lcs_data(self, decl: StructureDecl) -> LcsData:
        return LcsData(alpha=decl.value("alpha"), omega=decl.value("omega"))

    def contact_data(self, decl: StructureDecl) -> ContactData:
        if decl.kind == "lift":
            decl = self.structure(decl.value("contact"))
        return ContactData(beta=decl.value("beta"), Omega=decl.value("Omega"), E=decl.value("E"))

    def lrj_data(self, decl: StructureDecl) -> LrjData:
        return LrjData(alpha=decl.value("alpha"), omega=decl.value("omega"))

    def semantically_equal(self, other: "GeoDocument") -> bool:
        """Same chart and pairwise equal items after normalization."""
        if self.chart != other.chart or len(self.items) != len(other.items):
            return False
        for mine, theirs in zip(self.items, other.items):
            if type(mine) is not type(theirs) or not mine.same_as(theirs):
                return False
        return True
