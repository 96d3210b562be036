"""
LRJ Calculus Workbench
Graded Zero Testing

Zero-equivalence with sin/cos/exp is undecidable in general, so the
answer is graded: exact for the rational fragment, probabilistic at
seeded sample points otherwise, with a witness when nonzero.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple

import sympy as sp

from ..chart.chart import Chart, SamplePlan, sample_points
from ..config.settings import settings
from .expressions import EvaluationError, ScalarExpr, evaluate, is_transcendental, normalize

logger = logging.getLogger(__name__)


class ZeroKind(Enum):
    """Outcome of a zero test, strongest first."""
    EXACT = "exact"
    PROBABILISTIC = "probabilistic"
    INDETERMINATE = "indeterminate"
    NONZERO = "nonzero"


@dataclass(frozen=True)
class ZeroGrade:
    """Graded answer to "is this expression zero?"."""
    kind: ZeroKind
    samples: int = 0
    tolerance: float = 0.0
    witness_point: Optional[Tuple[float, ...]] = None
    witness_value: Optional[float] = None
    reason: str = ""

    @classmethod
    def exact(cls) -> "ZeroGrade":
        return cls(ZeroKind.EXACT)

    @classmethod
    def probabilistic(cls, samples: int, tolerance: float) -> "ZeroGrade":
        return cls(ZeroKind.PROBABILISTIC, samples=samples, tolerance=tolerance)

    @classmethod
    def nonzero(cls, point: Tuple[float, ...], value: float) -> "ZeroGrade":
        return cls(ZeroKind.NONZERO, witness_point=point, witness_value=value)

    @classmethod
    def indeterminate(cls, reason: str) -> "ZeroGrade":
        return cls(ZeroKind.INDETERMINATE, reason=reason)

    @property
    def passed(self) -> bool:
        """Exact or probabilistic."""
        return self.kind in (ZeroKind.EXACT, ZeroKind.PROBABILISTIC)

    def describe(self) -> str:
        if self.kind is ZeroKind.NONZERO:
            point = ", ".join(f"{v:.6g}" for v in self.witness_point)
            return f"value {self.witness_value:.6g} at ({point})"
        if self.kind is ZeroKind.PROBABILISTIC:
            return f"{self.samples} samples within {self.tolerance:g}"
        return self.reason or self.kind.value


_RANK = {ZeroKind.EXACT: 0, ZeroKind.PROBABILISTIC: 1, ZeroKind.INDETERMINATE: 2, ZeroKind.NONZERO: 3}


def weakest(grades: Iterable[ZeroGrade]) -> ZeroGrade:
    """The weakest grade of a collection (EXACT when empty)."""
    result = ZeroGrade.exact()
    for grade in grades:
        if _RANK[grade.kind] > _RANK[result.kind]:
            result = grade
    return result


def _chart_for(e: ScalarExpr, chart: Optional[Chart]) -> Chart:
    if chart is not None:
        return chart
    names = sorted(s.name for s in e.free_symbols) or ["x"]
    return Chart.default(names, name="auto")


def _magnitude(e: ScalarExpr, point, chart: Chart) -> float:
    terms = e.args if isinstance(e, sp.Add) else (e,)
    scale = 0.0
    for term in terms:
        try:
            scale = max(scale, abs(evaluate(term, point, chart)))
        except EvaluationError:
            continue
    return scale


def is_zero(
    e: ScalarExpr,
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    chart: Optional[Chart] = None,
    margin: Optional[float] = None,
) -> ZeroGrade:
    """
    Decide whether ``e`` vanishes identically on the chart box.

    Args:
        e: Expression to test
        samples: Number of sample points (default from settings)
        tol: Relative tolerance (default from settings)
        seed: Sampling seed (default from settings)
        chart: Chart supplying coordinates and box (default [-1,1]^n)
        margin: Box margin (default from settings)

    Returns:
        ZeroGrade: EXACT, PROBABILISTIC, NONZERO (with witness) or
        INDETERMINATE when every sample failed to evaluate
    """
    samples = settings.samples if samples is None else samples
    tol = settings.tolerance if tol is None else tol
    seed = settings.seed if seed is None else seed
    margin = settings.margin if margin is None else margin
    if samples < 1 or not tol > 0:
        raise ValueError(f"is_zero needs samples >= 1 and tol > 0, got {samples}, {tol}")

    reduced = normalize(e)
    if reduced == 0:
        return ZeroGrade.exact()

    chart = _chart_for(reduced, chart)
    plan = SamplePlan(count=samples, seed=seed, margin=margin, tolerance=tol)
    draws = sample_points(chart, plan, count=samples * (1 + settings.resample_factor))
    exact_nonzero = not is_transcendental(reduced)

    used = 0
    failures = 0
    best: Optional[Tuple[Tuple[float, ...], float]] = None
    for point in draws:
        if used == samples:
            break
        try:
            value = evaluate(reduced, point, chart)
            scale = _magnitude(e, point, chart)
        except EvaluationError as exc:
            failures += 1
            logger.debug("resampling after %s", exc)
            continue
        used += 1
        if best is None or abs(value) > abs(best[1]):
            best = (point, value)
        if not exact_nonzero and abs(value) > tol * (1.0 + scale):
            return ZeroGrade.nonzero(point, value)

    if used < samples:
        return ZeroGrade.indeterminate(
            f"only {used} of {samples} sample points evaluated ({failures} failures)"
        )
    if exact_nonzero:
        # nonzero normal form: report the largest sampled value
        return ZeroGrade.nonzero(*best)
    return ZeroGrade.probabilistic(samples, tol)
