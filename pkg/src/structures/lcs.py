"""
LRJ Calculus Workbench
Locally Conformal Symplectic Structures

Checker for pairs (omega, alpha) on X(M) with d(alpha) = 0,
d(omega) = -alpha ^ omega and omega nondegenerate.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..calculus.coboundary import exterior_d
from ..calculus.forms import XForm, component_matrix, wedge
from ..calculus.operators import same_chart
from ..calculus.pfaffian import pfaffian_of
from ..chart.chart import Chart, SamplePlan
from .report import VerificationReport, check_form_zero, check_nonvanishing

logger = logging.getLogger(__name__)

SYMPLECTIC_FLAG = "symplectic"


@dataclass(frozen=True)
class LcsData:
    """A candidate locally conformal symplectic pair."""
    alpha: XForm
    omega: XForm

    def __post_init__(self):
        same_chart(self.alpha, self.omega)
        if self.alpha.degree != 1 or self.omega.degree != 2:
            raise ValueError(
                f"LCS data needs a 1-form and a 2-form, got degrees {self.alpha.degree}, {self.omega.degree}"
            )
        object.__setattr__(self, "alpha", self.alpha.as_xform())
        object.__setattr__(self, "omega", self.omega.as_xform())

    @property
    def chart(self) -> Chart:
        return self.omega.chart


def check_lcs(data: LcsData, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """
    Verify the LCS axioms.

    Args:
        data: The pair (alpha, omega)
        plan: Sampling plan for graded checks (default from settings)

    Returns:
        VerificationReport; flags ``symplectic`` when alpha = 0
    """
    plan = plan or SamplePlan.from_settings()
    chart = data.chart
    report = VerificationReport(title="lcs")
    if chart.dim % 2:
        report.fail(
            "dimension", "dim M even",
            f"chart {chart.name} has odd dimension {chart.dim}; "
            "a nondegenerate 2-form on X(M) needs even dimension",
        )
        return report

    report.add(check_form_zero("closed_alpha", "d(alpha) = 0", exterior_d(data.alpha), plan))
    report.add(check_form_zero(
        "conformal_closure", "d(omega) = -alpha ^ omega",
        exterior_d(data.omega) + wedge(data.alpha, data.omega), plan,
    ))
    on_x = [row[1:] for row in component_matrix(data.omega)[1:]]
    report.add(check_nonvanishing("nondegenerate", "Pf(omega) != 0", pfaffian_of(on_x), chart, plan))

    if data.alpha.is_zero_form():
        report.flags.append(SYMPLECTIC_FLAG)
    return report
