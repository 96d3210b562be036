"""
LRJ Calculus Workbench
Run Configuration and JSON Report Schemas

Pydantic models for the command-line run configuration and the
machine-readable report (published as docs/report.schema.json).
"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from .. import __version__
from ..chart.chart import Chart, SamplePlan
from ..config.settings import settings
from ..structures.report import CheckResult, VerificationReport

GradeName = Literal["exact", "probabilistic", "indeterminate", "failed"]


class RunConfig(BaseModel):
    """Options of one ``lrjcalc check`` run."""
    input_path: Path
    report_path: Optional[Path] = None
    samples: int = Field(default_factory=lambda: settings.samples, ge=1)
    seed: int = Field(default_factory=lambda: settings.seed)
    tolerance: float = Field(default_factory=lambda: settings.tolerance, gt=0)
    only: List[str] = Field(default_factory=list, description="Check-name globs")
    timings: bool = Field(default_factory=lambda: settings.report_timings)

    def plan(self) -> SamplePlan:
        return SamplePlan(count=self.samples, seed=self.seed, margin=settings.margin, tolerance=self.tolerance)


class CheckEntry(BaseModel):
    """One graded check."""
    check: str
    reference: str
    grade: GradeName
    witness: Optional[str] = None
    detail: Optional[str] = None
    millis: Optional[float] = None

    @classmethod
    def from_result(cls, result: CheckResult, timings: bool) -> "CheckEntry":
        return cls(
            check=result.name,
            reference=result.reference,
            grade=result.grade.value,
            witness=result.witness,
            detail=result.detail or None,
            millis=result.millis if timings else None,
        )


class ComputedEntry(BaseModel):
    """A computed object: Reeb operator, bracket value, classification, Hamiltonian."""
    target: str
    kind: Literal["reeb", "bracket", "classification", "hamiltonian"]
    value: str


class ChartSummary(BaseModel):
    name: str
    dim: int
    coords: List[str]
    domain: List[Tuple[float, float]]

    @classmethod
    def from_chart(cls, chart: Chart) -> "ChartSummary":
        return cls(name=chart.name, dim=chart.dim, coords=list(chart.coords), domain=list(chart.domain))


class JsonReport(BaseModel):
    """Machine-readable result of a check run."""
    tool: str = "lrjcalc"
    version: str = __version__
    input: str
    seed: int
    samples: int
    tolerance: float
    chart: ChartSummary
    checks: List[CheckEntry]
    results: List[ComputedEntry] = Field(default_factory=list)
    flags: List[str] = Field(default_factory=list)
    overall: GradeName

    @classmethod
    def build(cls, config: RunConfig, chart: Chart, report: VerificationReport,
              results: List[ComputedEntry]) -> "JsonReport":
        return cls(
            input=config.input_path.name,
            seed=config.seed,
            samples=config.samples,
            tolerance=config.tolerance,
            chart=ChartSummary.from_chart(chart),
            checks=[CheckEntry.from_result(c, config.timings) for c in report.checks],
            results=results,
            flags=list(report.flags),
            overall=report.overall.value,
        )
