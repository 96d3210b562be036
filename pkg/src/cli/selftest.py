"""
LRJ Calculus Workbench
Cartan Self-Test

Randomized identity suites for the calculus on R^3 and R^5: the
commutation rules of theta, i and delta_alpha, the derivation and
commutativity rules of the exterior algebra, the anchor identity of
rho_alpha and the Chevalley-Eilenberg cross-check of delta_alpha.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from ..cas.expressions import ScalarExpr
from ..calculus.coboundary import chevalley_eilenberg, delta, delta_alpha, rho_alpha, rho_alpha_apply, theta
from ..calculus.forms import SkewFormD, broken_wedge_sign, evaluate, interior, scalar_form, unit_form, wedge
from ..calculus.operators import DiffOp, apply, bracket
from ..calculus.sampling import RandomSource
from ..chart.chart import Chart, SamplePlan
from ..config.settings import settings
from ..dsl.printer import format_form, format_op
from ..structures.report import CheckResult, VerificationReport, check_form_zero, check_scalar_zero, combine

logger = logging.getLogger(__name__)

IDENTITIES: Dict[str, str] = {
    "theta_interior": "[theta_phi, i_psi] = i_[phi,psi]",
    "theta_delta": "theta_phi delta_alpha = delta_alpha theta_phi",
    "theta_bracket": "[theta_phi, theta_psi] = theta_[phi,psi]",
    "theta_functions": "theta_phi(a) = rho_alpha(phi)(a)",
    "delta_squared": "delta_alpha delta_alpha = 0",
    "interior_derivation": "i_phi(eta ^ zeta) = i_phi eta ^ zeta + (-1)^p eta ^ i_phi zeta",
    "graded_commutativity": "eta ^ zeta = (-1)^(pq) zeta ^ eta",
    "wedge_associativity": "(eta ^ zeta) ^ xi = eta ^ (zeta ^ xi)",
    "bracket_commutator": "[phi,psi](f) = phi(psi(f)) - psi(phi(f))",
    "anchor_identity": "[rho_alpha phi, rho_alpha psi] - rho_alpha[phi,psi] = [delta(alpha) - delta(1) ^ alpha](phi,psi)",
    "chevalley_eilenberg": "CE sum for rho_alpha = delta(eta) + alpha ^ eta",
}


def suite_charts() -> Tuple[Chart, ...]:
    return (
        Chart.default(("x", "y", "z"), name="R3"),
        Chart.default(("x1", "y1", "x2", "y2", "z"), name="R5"),
    )


def interior_defect(phi: DiffOp, eta: SkewFormD, zeta: SkewFormD) -> SkewFormD:
    """i_phi(eta ^ zeta) - i_phi eta ^ zeta - (-1)^p eta ^ i_phi zeta."""
    p = eta.degree
    defect = interior(phi, wedge(eta, zeta)) - wedge(eta, interior(phi, zeta)).scale((-1) ** p)
    if p == 0:
        # i_phi of a function is zero, not a degree -1 form
        return defect
    return defect - wedge(interior(phi, eta), zeta)


class CartanSuite:
    """Randomized identity checks over seeded polynomial inputs."""

    def __init__(
        self,
        seed: int = 0,
        instances: Optional[int] = None,
        plan: Optional[SamplePlan] = None,
        break_wedge_sign: bool = False,
    ):
        """
        Args:
            seed: Seed of the random inputs and of the sampling plan
            instances: Instances per chart (default settings.selftest_instances)
            plan: Sampling plan for graded checks
            break_wedge_sign: Run with the shuffle sign dropped from wedge
        """
        self.seed = seed
        self.instances = settings.selftest_instances if instances is None else instances
        self.plan = plan or SamplePlan.from_settings(seed=seed)
        self.break_wedge_sign = break_wedge_sign

    def run(self) -> VerificationReport:
        if self.break_wedge_sign:
            with broken_wedge_sign():
                return self._run()
        return self._run()

    def _run(self) -> VerificationReport:
        report = VerificationReport(title="selftest")
        for offset, chart in enumerate(suite_charts()):
            source = RandomSource(chart, seed=self.seed + 1000 * offset, max_degree=2, density=0.35)
            found: Dict[str, List[CheckResult]] = {name: [] for name in IDENTITIES}
            for index in range(self.instances):
                for name, result in self._instance(source, index):
                    found[name].append(result)
            for name, results in found.items():
                report.add(combine(f"{chart.name}/{name}", IDENTITIES[name], results))
        return report

    def _instance(self, source: RandomSource, index: int):
        chart, plan = source.chart, self.plan
        degree = index % 3
        phi, psi = source.diffop(), source.diffop()
        alpha = source.admissible_alpha() if index % 2 else unit_form(chart).scale(0)
        eta = source.form(degree)
        zeta, xi = source.form(1), source.form(1)
        f = source.polynomial()
        inputs = f"instance {index}: phi = {format_op(phi)}; psi = {format_op(psi)}; eta = {format_form(eta)}"

        def form_check(name: str, residual: Callable[[], SkewFormD]):
            return name, _tag(check_form_zero(name, IDENTITIES[name], residual(), plan), inputs)

        def scalar_check(name: str, residual: Callable[[], ScalarExpr]):
            return name, _tag(check_scalar_zero(name, IDENTITIES[name], residual(), chart, plan), inputs)

        pq = bracket(phi, psi)
        yield form_check("theta_interior", lambda: (
            theta(phi, alpha, interior(psi, eta)) - interior(psi, theta(phi, alpha, eta)) - interior(pq, eta)))
        yield form_check("theta_delta", lambda: (
            theta(phi, alpha, delta_alpha(eta, alpha)) - delta_alpha(theta(phi, alpha, eta), alpha)))
        yield form_check("theta_bracket", lambda: (
            theta(phi, alpha, theta(psi, alpha, eta)) - theta(psi, alpha, theta(phi, alpha, eta))
            - theta(pq, alpha, eta)))
        yield scalar_check("theta_functions", lambda: (
            theta(phi, alpha, scalar_form(chart, f)).scalar - rho_alpha_apply(phi, alpha, f)))
        yield form_check("delta_squared", lambda: delta_alpha(delta_alpha(eta, alpha), alpha))
        yield form_check("interior_derivation", lambda: interior_defect(phi, eta, zeta))
        yield form_check("graded_commutativity", lambda: (
            wedge(eta, zeta) - wedge(zeta, eta).scale((-1) ** degree)
            + wedge(zeta, xi) + wedge(xi, zeta)))
        yield form_check("wedge_associativity", lambda: (
            wedge(wedge(eta, zeta), xi) - wedge(eta, wedge(zeta, xi))))
        yield scalar_check("bracket_commutator", lambda: (
            apply(phi, apply(psi, f)) - apply(psi, apply(phi, f)) - apply(pq, f)))

        twisted = source.alpha_nonconstant_unit()
        defect = delta(twisted) - wedge(unit_form(chart), twisted)
        yield scalar_check("anchor_identity", lambda: (
            apply(bracket(rho_alpha(phi, twisted), rho_alpha(psi, twisted)), f)
            - apply(rho_alpha(pq, twisted), f) - evaluate(defect, phi, psi) * f))

        arguments: List[DiffOp] = [source.diffop() for _ in range(degree + 1)]
        yield scalar_check("chevalley_eilenberg", lambda: (
            chevalley_eilenberg(eta, alpha, *arguments) - evaluate(delta_alpha(eta, alpha), *arguments)))


def _tag(result: CheckResult, inputs: str) -> CheckResult:
    if result.witness:
        result.witness = f"{result.witness} ({inputs})"
    return result
