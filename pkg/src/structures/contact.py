"""
LRJ Calculus Workbench
Contact Data and the Lift to D(M)

A pair (beta, Omega) with fundamental field E on a (2k+1)-chart lifts
to a 2-form Omega~ = Omega_bar + delta(1) ^ beta~ on D(M); together with
alpha = [1+c] delta(1) + i_E delta(beta~) + g beta~ it is a symplectic
LRJ structure when the lift constraint holds.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import sympy as sp

from ..cas.expressions import ONE, ZERO, ScalarExpr, normalize
from ..calculus.coboundary import delta, exterior_d
from ..calculus.forms import (
    AlphaForm, SkewFormD, XForm, component_matrix, evaluate, interior, lift_xform,
    restrict_to_X, top_coefficient, unit_form, wedge, wedge_power,
)
from ..calculus.operators import DiffOp, bracket, same_chart
from ..calculus.pfaffian import pfaffian
from ..calculus.sampling import RandomSource
from ..chart.chart import Chart, SamplePlan
from ..config.settings import settings
from .errors import LiftRejected, PreconditionError
from .linsolve import solve_linear
from .lrj import LrjData, kernel_basis
from .report import (
    VerificationReport, check_form_zero, check_nonvanishing, check_scalar_zero, combine,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContactData:
    """Contact form beta, 2-form Omega and fundamental field E on a chart."""
    beta: XForm
    Omega: XForm
    E: DiffOp

    def __post_init__(self):
        same_chart(self.beta, self.Omega, self.E)
        if self.beta.degree != 1 or self.Omega.degree != 2:
            raise ValueError(
                f"contact data needs a 1-form and a 2-form, got degrees {self.beta.degree}, {self.Omega.degree}"
            )
        if not self.E.is_vector_field:
            raise ValueError(f"E must be a vector field, got scalar part {self.E.scalar}")
        object.__setattr__(self, "beta", self.beta.as_xform())
        object.__setattr__(self, "Omega", self.Omega.as_xform())

    @property
    def chart(self) -> Chart:
        return self.beta.chart

    def project(self, X: DiffOp) -> DiffOp:
        """X - beta(X) E, the Ker(beta) part of a vector field."""
        return X.vector_part() - self.E.scale(evaluate(self.beta, X.vector_part()))


@dataclass
class LiftedContact:
    """The lift of contact data to D(M) for chosen alpha(1) = c and alpha(E) = g."""
    base: ContactData
    c: sp.Rational
    g: ScalarExpr
    beta_tilde: SkewFormD
    Omega_bar: SkewFormD
    Omega_tilde: SkewFormD
    alpha: AlphaForm
    report: VerificationReport

    @property
    def lrj(self) -> LrjData:
        return LrjData(alpha=self.alpha, omega=self.Omega_tilde)

    @property
    def chart(self) -> Chart:
        return self.base.chart


def _plan(plan: Optional[SamplePlan]) -> SamplePlan:
    return plan or SamplePlan.from_settings()


def contact_data_check(cd: ContactData, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """
    beta(E) = 1, i_E Omega = 0, beta ^ Omega^k nonvanishing, and the splitting
    X(M) = Ker(beta) + C(M) E.
    """
    plan = _plan(plan)
    chart = cd.chart
    report = VerificationReport(title="contact")
    if chart.dim % 2 == 0:
        report.fail("dimension", "dim M = 2k+1",
                    f"chart {chart.name} has even dimension {chart.dim}; contact data needs odd dimension")
        return report

    report.add(check_scalar_zero("beta_on_E", "beta(E) = 1", evaluate(cd.beta, cd.E) - ONE, chart, plan))
    report.add(check_form_zero("E_in_kernel_of_Omega", "i_E(Omega) = 0", interior(cd.E, cd.Omega), plan))
    k = chart.dim // 2
    volume = top_coefficient(wedge(cd.beta, wedge_power(cd.Omega, k)))
    report.add(check_nonvanishing("contact_volume", "beta ^ Omega^k != 0", volume, chart, plan))

    source = RandomSource(chart, seed=plan.seed)
    fields = [DiffOp.basis(chart, i) for i in range(1, chart.dim + 1)] + [source.vector_field()]
    splits = [
        check_scalar_zero("", "", evaluate(cd.beta, cd.project(X)), chart, plan) for X in fields
    ]
    report.add(combine("kernel_splitting", "beta(X - beta(X) E) = 0", splits))
    return report


def lift_constraint(cd: ContactData, g: ScalarExpr) -> XForm:
    """d[g beta + i_E d(beta)], which must vanish for the lift to exist."""
    inner = cd.beta.scale(g) + interior(cd.E, exterior_d(cd.beta))
    return exterior_d(inner.as_xform())


def _omega_bar(cd: ContactData) -> SkewFormD:
    chart = cd.chart
    projected = [cd.project(DiffOp.basis(chart, i)) for i in range(1, chart.dim + 1)]
    comps = {
        (i + 1, j + 1): evaluate(cd.Omega, projected[i], projected[j])
        for i in range(chart.dim) for j in range(i + 1, chart.dim)
    }
    return SkewFormD(chart, 2, comps)


def _inverse_round_trips(lifted: LiftedContact, plan: SamplePlan, trials: int):
    """
    Solve i_phi Omega~ = nu with phi = nu(E) + X - nu(1) E, X in Ker(beta).

    X is found on the kernel basis from Omega(X, Z) = nu(Z), Z in Ker(beta).
    """
    cd = lifted.base
    chart = cd.chart
    basis = kernel_basis(cd.beta, cd.E)
    gram = component_matrix(cd.Omega, basis)
    transposed = [[gram[b][a] for b in range(len(basis))] for a in range(len(basis))]
    source = RandomSource(chart, seed=plan.seed + 1)
    results = []
    for _ in range(trials):
        nu = source.form(1)
        coeffs = solve_linear(transposed, [evaluate(nu, Z) for Z in basis])
        X = DiffOp.zero(chart)
        for coefficient, Z in zip(coeffs, basis):
            X = X + Z.scale(coefficient)
        phi = DiffOp.multiplication(chart, evaluate(nu, cd.E)) + X - cd.E.scale(nu.component((0,)))
        results.append(check_form_zero("", "", interior(phi, lifted.Omega_tilde) - nu, plan))
    return results


def lift_contact(
    cd: ContactData,
    c: Union[int, Fraction, sp.Rational] = 0,
    g: ScalarExpr = ZERO,
    plan: Optional[SamplePlan] = None,
    trials: Optional[int] = None,
) -> LiftedContact:
    """
    Lift contact data to D(M) and verify the lifted identities.

    Args:
        cd: Contact data passing contact_data_check
        c: Chosen constant alpha(1)
        g: Chosen function alpha(E)
        plan: Sampling plan for graded checks
        trials: Random nu per inverse round trip (default settings.inverse_trials)

    Returns:
        LiftedContact whose report holds every lifted identity

    Raises:
        PreconditionError: the contact data does not verify
        LiftRejected: d[g beta + i_E d(beta)] != 0
    """
    plan = _plan(plan)
    trials = settings.inverse_trials if trials is None else trials
    chart = cd.chart
    c = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sp.Rational(c)
    g = normalize(sp.sympify(g))

    base_report = contact_data_check(cd, plan)
    if not base_report.passed:
        failed = ", ".join(f"{r.name} ({r.witness})" for r in base_report.failures())
        raise PreconditionError(f"contact data does not verify: {failed or base_report.overall.value}")

    constraint = check_form_zero("lift_constraint", "d[g*beta + i_E d(beta)] = 0", lift_constraint(cd, g), plan)
    if not constraint.passed:
        raise LiftRejected("lift constraint fails", constraint.witness or constraint.grade.value)

    unit = DiffOp.unit(chart)
    delta_one = unit_form(chart)
    beta_tilde = lift_xform(cd.beta)
    Omega_bar = _omega_bar(cd)
    Omega_tilde = Omega_bar + wedge(delta_one, beta_tilde)
    alpha = (delta_one.scale(ONE + c) + interior(cd.E, delta(beta_tilde)) + beta_tilde.scale(g)).as_alpha()
    logger.debug("lifted alpha %r", alpha)

    report = VerificationReport(title="lift")
    report.extend(base_report)
    report.add(constraint)
    lifted = LiftedContact(cd, c, g, beta_tilde, Omega_bar, Omega_tilde, alpha, report)

    report.add(check_form_zero("unit_kills_Omega_bar", "i_1(Omega_bar) = 0", interior(unit, Omega_bar), plan))
    report.add(check_form_zero("unit_contracts_to_beta", "i_1(Omega~) = beta~",
                               interior(unit, Omega_tilde) - beta_tilde, plan))
    report.add(check_form_zero("E_contracts_to_minus_delta_one", "i_E(Omega~) = -delta(1)",
                               interior(cd.E, Omega_tilde) + delta_one, plan))
    report.add(check_form_zero("Omega_bar_restricts_to_Omega", "Omega_bar|X = Omega",
                               restrict_to_X(Omega_bar) - cd.Omega, plan))

    report.add(check_nonvanishing("lifted_nondegenerate", "Pf(Omega~) != 0", pfaffian(Omega_tilde), chart, plan))
    report.add(combine("inverse_round_trip", "phi = nu(E) + X - nu(1) E solves i_phi Omega~ = nu",
                       _inverse_round_trips(lifted, plan, trials)))

    alpha_at_E = evaluate(alpha, cd.E)
    d_Omega = delta(Omega_tilde)
    report.add(check_form_zero(
        "unit_twisted_exactness", "[1+alpha(1)]*Omega~ = delta(beta~) + alpha ^ beta~",
        Omega_tilde.scale(ONE + alpha.unit_value) - (delta(beta_tilde) + wedge(alpha, beta_tilde)), plan,
    ))
    report.add(check_form_zero(
        "E_twisted_identity", "alpha(E)*Omega~ = delta(1) ^ alpha - i_E delta(Omega~)",
        Omega_tilde.scale(alpha_at_E) - (wedge(delta_one, alpha) - interior(cd.E, d_Omega)), plan,
    ))
    kernel_checks = []
    for X in kernel_basis(cd.beta, cd.E):
        coefficient = evaluate(cd.beta, bracket(X, cd.E))
        residual = Omega_tilde.scale(coefficient) - (
            wedge(alpha, interior(X, Omega_tilde)) - interior(X, d_Omega)
        )
        kernel_checks.append(check_form_zero("", "", residual, plan))
    report.add(combine("kernel_twisted_identity",
                       "beta[X,E]*Omega~ = alpha ^ i_X Omega~ - i_X delta(Omega~)", kernel_checks))

    report.add(check_form_zero("lifted_twisted_closure", "delta(Omega~) = -alpha ^ Omega~",
                               d_Omega + wedge(alpha, Omega_tilde), plan))
    report.add(check_form_zero("lifted_alpha_admissible", "delta(alpha) = delta(1) ^ alpha",
                               delta(alpha) - wedge(delta_one, alpha), plan))
    report.add(combine("alpha_reproduces_choices", "alpha(1) = c and alpha(E) = g", [
        check_scalar_zero("", "", alpha.unit_value - c, chart, plan),
        check_scalar_zero("", "", alpha_at_E - g, chart, plan),
    ]))
    return lifted
