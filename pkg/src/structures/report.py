"""
LRJ Calculus Workbench
Verification Reports

Every identity check produces a graded CheckResult; a report's overall
verdict is the weakest grade among its checks.
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional

from ..cas.expressions import EvaluationError, ScalarExpr, evaluate, normalize
from ..cas.zero_test import ZeroGrade, ZeroKind, is_zero
from ..calculus.forms import SkewFormD
from ..calculus.operators import DiffOp
from ..chart.chart import Chart, SamplePlan, sample_points
from ..config.settings import settings

logger = logging.getLogger(__name__)


class Grade(str, Enum):
    """Verdict of one check, strongest first."""
    EXACT = "exact"
    PROBABILISTIC = "probabilistic"
    INDETERMINATE = "indeterminate"
    FAILED = "failed"

    @property
    def rank(self) -> int:
        return list(Grade).index(self)

    @property
    def passed(self) -> bool:
        return self in (Grade.EXACT, Grade.PROBABILISTIC)


def weakest_grade(grades: Iterable[Grade]) -> Grade:
    """Weakest of the grades; EXACT for none."""
    result = Grade.EXACT
    for grade in grades:
        if grade.rank > result.rank:
            result = grade
    return result


@dataclass
class CheckResult:
    """Outcome of a single named identity check."""
    name: str
    reference: str
    grade: Grade
    witness: Optional[str] = None
    detail: str = ""
    millis: float = 0.0

    @property
    def passed(self) -> bool:
        return self.grade.passed


@dataclass
class VerificationReport:
    """Ordered collection of check results."""
    title: str
    checks: List[CheckResult] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        logger.info("%s: %s %s", result.name, result.grade.value, result.witness or "")
        return result

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        """Append another report's checks and flags."""
        self.checks.extend(other.checks)
        for flag in other.flags:
            if flag not in self.flags:
                self.flags.append(flag)
        return self

    def fail(self, name: str, reference: str, reason: str) -> CheckResult:
        """Record a structural failure that needs no zero test."""
        return self.add(CheckResult(name, reference, Grade.FAILED, witness=reason))

    @property
    def overall(self) -> Grade:
        return weakest_grade(c.grade for c in self.checks)

    @property
    def passed(self) -> bool:
        return self.overall.passed

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.grade is Grade.FAILED]

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


# ------------------------------------------------------------------ grading

_FROM_ZERO = {
    ZeroKind.EXACT: Grade.EXACT,
    ZeroKind.PROBABILISTIC: Grade.PROBABILISTIC,
    ZeroKind.INDETERMINATE: Grade.INDETERMINATE,
    ZeroKind.NONZERO: Grade.FAILED,
}


def _zero(e: ScalarExpr, chart: Chart, plan: SamplePlan) -> ZeroGrade:
    return is_zero(e, samples=plan.count, tol=plan.tolerance, seed=plan.seed,
                   chart=chart, margin=plan.margin)


def _elapsed(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def _result(name, reference, grades, start) -> CheckResult:
    """Fold (label, ZeroGrade) pairs into one CheckResult."""
    worst: Optional[tuple] = None
    for label, grade in grades:
        if worst is None or _FROM_ZERO[grade.kind].rank > _FROM_ZERO[worst[1].kind].rank:
            worst = (label, grade)
    if worst is None:
        return CheckResult(name, reference, Grade.EXACT, millis=_elapsed(start))
    label, grade = worst
    verdict = _FROM_ZERO[grade.kind]
    witness = None
    if verdict is Grade.FAILED:
        witness = f"{label}: {grade.describe()}" if label else grade.describe()
    return CheckResult(name, reference, verdict, witness=witness,
                       detail=grade.describe() if verdict is not Grade.FAILED else "",
                       millis=_elapsed(start))


def check_scalar_zero(name: str, reference: str, e: ScalarExpr, chart: Chart,
                      plan: SamplePlan) -> CheckResult:
    """Graded check that a scalar expression vanishes."""
    start = time.perf_counter()
    return _result(name, reference, [("", _zero(e, chart, plan))], start)


def basis_label(chart: Chart, key) -> str:
    names = ("1",) + tuple(f"d/d{c}" for c in chart.coords)
    return "(" + ", ".join(names[k] for k in key) + ")"


def check_form_zero(name: str, reference: str, form: SkewFormD, plan: SamplePlan) -> CheckResult:
    """Graded check that every component of a form vanishes; the witness names the tuple."""
    start = time.perf_counter()
    grades = [
        (f"on {basis_label(form.chart, key)}", _zero(value, form.chart, plan))
        for key, value in form.components.items()
    ]
    return _result(name, reference, grades, start)


def check_op_zero(name: str, reference: str, op: DiffOp, plan: SamplePlan) -> CheckResult:
    """Graded check that an operator vanishes."""
    start = time.perf_counter()
    labels = ("scalar part",) + tuple(f"d/d{c} part" for c in op.chart.coords)
    grades = [
        (label, _zero(value, op.chart, plan))
        for label, value in zip(labels, op.components) if value != 0
    ]
    return _result(name, reference, grades, start)


def check_nonvanishing(name: str, reference: str, e: ScalarExpr, chart: Chart,
                       plan: SamplePlan) -> CheckResult:
    """
    Graded check that a function has no zeros on the chart box.

    Exact when the normal form is a nonzero constant; otherwise the
    function is sampled and a (near) zero value is the witness.
    """
    start = time.perf_counter()
    reduced = normalize(e)
    if reduced.is_Number:
        if reduced == 0:
            return CheckResult(name, reference, Grade.FAILED, witness="vanishes identically",
                               millis=_elapsed(start))
        return CheckResult(name, reference, Grade.EXACT, detail=f"constant {reduced}",
                           millis=_elapsed(start))

    draws = sample_points(chart, plan, count=plan.count * (1 + settings.resample_factor))
    used = 0
    for point in draws:
        if used == plan.count:
            break
        try:
            value = evaluate(reduced, point, chart)
        except EvaluationError as exc:
            logger.debug("resampling after %s", exc)
            continue
        used += 1
        if abs(value) <= plan.tolerance:
            coords = ", ".join(f"{v:.6g}" for v in point)
            return CheckResult(name, reference, Grade.FAILED,
                               witness=f"value {value:.6g} at ({coords})", millis=_elapsed(start))
    if used < plan.count:
        return CheckResult(name, reference, Grade.INDETERMINATE,
                           detail=f"only {used} of {plan.count} sample points evaluated",
                           millis=_elapsed(start))
    return CheckResult(name, reference, Grade.PROBABILISTIC,
                       detail=f"nonzero at {plan.count} samples", millis=_elapsed(start))


def from_flag(name: str, reference: str, ok: bool, witness: str = "") -> CheckResult:
    """An exact yes/no check."""
    return CheckResult(name, reference, Grade.EXACT if ok else Grade.FAILED,
                       witness=None if ok else witness)


def combine(name: str, reference: str, results: Iterable[CheckResult]) -> CheckResult:
    """Fold several results of one identity (e.g. over random trials) into one."""
    results = list(results)
    worst = None
    for result in results:
        if worst is None or result.grade.rank > worst.grade.rank:
            worst = result
    if worst is None:
        return CheckResult(name, reference, Grade.EXACT)
    return CheckResult(name, reference, worst.grade, witness=worst.witness, detail=worst.detail,
                       millis=round(sum(r.millis for r in results), 3))
