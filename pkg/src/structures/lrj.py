"""
LRJ Calculus Workbench
Symplectic Lie-Rinehart-Jacobi Structures on D(M)

Checker for pairs (alpha, omega) on first-order operators, and the
objects such a structure carries: the Reeb operator, the splitting of
vector fields, Hamiltonian operators, the Jacobi bracket, the volume
criterion and the exact / nonexact classification.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from ..cas.expressions import ONE, ZERO, ScalarExpr, normalize
from ..calculus.coboundary import delta, delta_alpha, exterior_d, rho_alpha, rho_alpha_apply
from ..calculus.forms import (
    AlphaForm, SkewFormD, component_matrix, evaluate, interior, lift_xform,
    restrict_to_X, scalar_form, top_coefficient, unit_form, wedge, wedge_power,
)
from ..calculus.operators import DiffOp, apply, same_chart
from ..calculus.pfaffian import pfaffian, pfaffian_of
from ..calculus.sampling import RandomSource
from ..chart.chart import Chart, SamplePlan
from ..config.settings import settings
from .errors import DegenerateError, InternalConsistencyError, PreconditionError
from .linsolve import solve_interior
from .report import (
    CheckResult, VerificationReport, check_form_zero, check_nonvanishing,
    check_op_zero, check_scalar_zero, combine,
)

logger = logging.getLogger(__name__)

EVEN_DIMENSION = (
    "chart {name} has even dimension {dim}: the component matrix of a 2-form on D(M) "
    "is skew of odd size {size}, hence singular, so M must be odd-dimensional"
)


@dataclass(frozen=True)
class LrjData:
    """A candidate symplectic Lie-Rinehart-Jacobi structure (alpha, omega)."""
    alpha: AlphaForm
    omega: SkewFormD

    def __post_init__(self):
        same_chart(self.alpha, self.omega)
        if self.omega.degree != 2:
            raise ValueError(f"omega must be a 2-form, got degree {self.omega.degree}")
        object.__setattr__(self, "alpha", self.alpha.as_alpha())

    @property
    def chart(self) -> Chart:
        return self.omega.chart

    @property
    def i_unit_omega(self) -> SkewFormD:
        """i_1(omega)."""
        return interior(DiffOp.unit(self.chart), self.omega)


@dataclass
class HamiltonianPair:
    """phi_f with i_{phi_f} omega = delta_alpha f, and its vector-field part X_f."""
    f: ScalarExpr
    phi_f: DiffOp
    X_f: DiffOp
    report: VerificationReport


class ContactKind(str, Enum):
    EXACT = "exact"
    NONEXACT = "nonexact"


@dataclass
class Classification:
    """Exact (omega is delta_alpha-exact) or nonexact (alpha(1) = -1) contact."""
    kind: ContactKind
    alpha_unit: ScalarExpr
    primitive: Optional[SkewFormD]
    report: VerificationReport


def _plan(plan: Optional[SamplePlan]) -> SamplePlan:
    return plan or SamplePlan.from_settings()


def _even_dimension_message(chart: Chart) -> str:
    return EVEN_DIMENSION.format(name=chart.name, dim=chart.dim, size=chart.dim + 1)


def _require(result: CheckResult, what: str) -> None:
    if not result.passed:
        raise InternalConsistencyError(f"{what} does not hold: {result.witness or result.grade.value}")


# --------------------------------------------------------------- admissibility

def check_rho_alpha_condition(alpha: SkewFormD, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """
    Decide whether rho_alpha is a Lie algebra morphism, by two routes.

    The direct route tests delta(alpha) = delta(1) ^ alpha; the second
    tests that alpha(1) is constant and alpha|X is closed. The verdicts
    must agree.

    Raises:
        InternalConsistencyError: the two routes disagree
    """
    plan = _plan(plan)
    chart = alpha.chart
    report = VerificationReport(title="rho_alpha")
    direct = report.add(check_form_zero(
        "rho_alpha_morphism", "delta(alpha) = delta(1) ^ alpha",
        delta(alpha) - wedge(unit_form(chart), alpha), plan,
    ))
    constant = check_form_zero(
        "alpha_unit_constant", "d(alpha(1)) = 0",
        exterior_d(scalar_form(chart, alpha.component((0,))).as_xform()), plan,
    )
    closed = check_form_zero("alpha_closed_on_X", "d(alpha|X) = 0", exterior_d(restrict_to_X(alpha)), plan)
    split = report.add(combine(
        "constant_unit_closed_restriction", "alpha(1) constant and d(alpha|X) = 0", [constant, closed],
    ))
    if direct.passed != split.passed:
        raise InternalConsistencyError(
            f"admissibility routes disagree: direct {direct.grade.value}, split {split.grade.value}"
        )
    return report


def check_lrj_D(data: LrjData, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """
    Verify a symplectic LRJ structure on D(M).

    Args:
        data: The pair (alpha, omega)
        plan: Sampling plan (default from settings)

    Returns:
        VerificationReport with admissibility, twisted closure and nondegeneracy
    """
    plan = _plan(plan)
    chart = data.chart
    report = VerificationReport(title="lrj")
    if chart.dim % 2 == 0:
        report.fail("dimension", "dim M odd", _even_dimension_message(chart))
        return report
    report.extend(check_rho_alpha_condition(data.alpha, plan))
    report.add(check_form_zero(
        "twisted_closure", "delta(omega) = -alpha ^ omega",
        delta(data.omega) + wedge(data.alpha, data.omega), plan,
    ))
    report.add(check_nonvanishing("nondegenerate", "Pf(omega) != 0", pfaffian(data.omega), chart, plan))
    return report


# --------------------------------------------------------------------- Reeb

def reeb(omega: SkewFormD, plan: Optional[SamplePlan] = None) -> DiffOp:
    """
    The unique H with i_H(omega) = -delta(1).

    Args:
        omega: Nondegenerate 2-form on D(M)
        plan: Sampling plan for the postcondition checks

    Returns:
        H, a vector field with (i_1 omega)(H) = 1

    Raises:
        DegenerateError: omega is singular (witness: its Pfaffian)
    """
    plan = _plan(plan)
    chart = omega.chart
    if (chart.dim + 1) % 2:
        raise DegenerateError(_even_dimension_message(chart), witness=ZERO)
    pf = pfaffian(omega)
    if pf == ZERO:
        raise DegenerateError("omega is degenerate", witness=pf)
    H = solve_interior(omega, -unit_form(chart))
    logger.debug("Reeb operator %r", H)
    _require(check_scalar_zero("reeb_vector_field", "H(1) = 0", H.scalar, chart, plan), "H(1) = 0")
    unit_pairing = evaluate(interior(DiffOp.unit(chart), omega), H)
    _require(check_scalar_zero("reeb_pairing", "(i_1 omega)(H) = 1", unit_pairing - ONE, chart, plan),
             "(i_1 omega)(H) = 1")
    return H


def decompose(X: DiffOp, omega: SkewFormD, H: DiffOp) -> Tuple[DiffOp, ScalarExpr]:
    """
    Split a vector field along Ker(i_1 omega|X) + C(M)*H.

    Returns:
        (X - (i_1 omega)(X)*H, (i_1 omega)(X))
    """
    same_chart(X, omega, H)
    if X.scalar != ZERO:
        raise PreconditionError(f"decompose needs a vector field, got scalar part {X.scalar}")
    coefficient = evaluate(interior(DiffOp.unit(omega.chart), omega), X)
    return X - H.scale(coefficient), coefficient


def kernel_basis(lam: SkewFormD, transversal: DiffOp) -> List[DiffOp]:
    """
    Basis {d_i - lam(d_i) T} of Ker(lam|X) for a vector field T with lam(T) = 1.

    One index where T has a nonvanishing component is dropped (the
    constant component of smallest index is preferred).
    """
    chart = lam.chart
    candidates = [i for i, v in enumerate(transversal.vec) if v != ZERO]
    if not candidates:
        raise PreconditionError("transversal field vanishes")
    constants = [i for i in candidates if transversal.vec[i].is_Number]
    dropped = (constants or candidates)[0]
    basis = []
    for i in range(chart.dim):
        if i == dropped:
            continue
        d_i = DiffOp.basis(chart, i + 1)
        basis.append(d_i - transversal.scale(evaluate(lam, d_i)))
    return basis


def check_module_isos(
    omega: SkewFormD,
    H: DiffOp,
    plan: Optional[SamplePlan] = None,
    trials: Optional[int] = None,
) -> VerificationReport:
    """
    Randomized check that phi -> i_phi omega restricts to the expected isomorphisms.

    Linear forms killing H come from vector fields; forms killing the
    unit and H come from Ker(i_1 omega|X); omega is nondegenerate on
    that kernel.
    """
    plan = _plan(plan)
    trials = settings.random_trials if trials is None else trials
    chart = omega.chart
    source = RandomSource(chart, seed=plan.seed)
    i_unit = interior(DiffOp.unit(chart), omega)
    report = VerificationReport(title="module_isos")

    from_fields, into_kernel = [], []
    for _ in range(trials):
        nu = source.form(1)
        eta = nu - i_unit.scale(evaluate(nu, H))
        phi = solve_interior(omega, eta)
        from_fields.append(check_scalar_zero("", "", phi.scalar, chart, plan))

        sigma = lift_xform(restrict_to_X(source.form(1)))
        sigma = sigma - i_unit.scale(evaluate(sigma, H))
        psi = solve_interior(omega, sigma)
        into_kernel.append(check_scalar_zero("", "", psi.scalar, chart, plan))
        into_kernel.append(check_scalar_zero("", "", evaluate(i_unit, psi), chart, plan))

    report.add(combine("forms_killing_H_from_fields", "eta(H) = 0 => phi(1) = 0", from_fields))
    report.add(combine("forms_killing_1_and_H_from_kernel",
                       "sigma(1) = sigma(H) = 0 => phi in Ker(i_1 omega|X)", into_kernel))
    basis = kernel_basis(i_unit, H)
    report.add(check_nonvanishing(
        "nondegenerate_on_kernel", "Pf(omega|Ker(i_1 omega|X)) != 0",
        pfaffian_of(component_matrix(omega, basis)), chart, plan,
    ))
    return report


# ------------------------------------------------------- Hamiltonian operators

def hamiltonian_ops(
    f: ScalarExpr,
    lrj: LrjData,
    H: DiffOp,
    plan: Optional[SamplePlan] = None,
) -> HamiltonianPair:
    """
    Hamiltonian operator phi_f and its vector-field part X_f.

    Args:
        f: Scalar function
        lrj: Verified structure
        H: Reeb operator of lrj.omega
        plan: Sampling plan for the asserted identities

    Returns:
        HamiltonianPair with a report of the asserted identities
    """
    plan = _plan(plan)
    chart = lrj.chart
    f = normalize(sp.sympify(f))
    alpha, omega = lrj.alpha, lrj.omega
    one_plus = normalize(ONE + alpha.unit_value)
    twisted = delta_alpha(scalar_form(chart, f), alpha)
    phi_f = solve_interior(omega, twisted)

    shift = normalize(apply(H, f) + f * evaluate(alpha, H))
    rhs = twisted - lrj.i_unit_omega.scale(shift) - unit_form(chart).scale(f * one_plus)
    X_f = solve_interior(omega, rhs)

    report = VerificationReport(title=f"hamiltonian[{f}]")
    report.add(check_scalar_zero("X_f_vector_field", "X_f(1) = 0", X_f.scalar, chart, plan))
    report.add(check_scalar_zero("X_f_in_kernel", "(i_1 omega)(X_f) = 0",
                                 evaluate(lrj.i_unit_omega, X_f), chart, plan))
    rebuilt = (DiffOp.multiplication(chart, rho_alpha_apply(H, alpha, f)) + X_f
               - H.scale(f * one_plus))
    report.add(check_op_zero("hamiltonian_splitting",
                             "phi_f = rho_alpha(H)(f) + X_f - f*[1+alpha(1)]*H",
                             phi_f - rebuilt, plan))
    return HamiltonianPair(f=f, phi_f=phi_f, X_f=X_f, report=report)


class JacobiBracket:
    """{f, g} = -omega(phi_f, phi_g), with Hamiltonian operators cached per function."""

    def __init__(self, lrj: LrjData, H: DiffOp, plan: Optional[SamplePlan] = None):
        self.lrj = lrj
        self.H = H
        self.plan = _plan(plan)
        self.H_alpha = rho_alpha(H, lrj.alpha).scale(ONE + lrj.alpha.unit_value)
        self._pairs: Dict[ScalarExpr, HamiltonianPair] = {}

    def pair(self, f: ScalarExpr) -> HamiltonianPair:
        f = normalize(sp.sympify(f))
        if f not in self._pairs:
            self._pairs[f] = hamiltonian_ops(f, self.lrj, self.H, self.plan)
        return self._pairs[f]

    def __call__(self, f: ScalarExpr, g: ScalarExpr) -> ScalarExpr:
        return normalize(-evaluate(self.lrj.omega, self.pair(f).phi_f, self.pair(g).phi_f))

    def alternative(self, f: ScalarExpr, g: ScalarExpr) -> ScalarExpr:
        """-omega(X_f, X_g) - f*H_alpha(g) + g*H_alpha(f)."""
        pf, pg = self.pair(f), self.pair(g)
        return normalize(
            -evaluate(self.lrj.omega, pf.X_f, pg.X_f)
            - pf.f * apply(self.H_alpha, pg.f) + pg.f * apply(self.H_alpha, pf.f)
        )

    def check_alternative(self, f: ScalarExpr, g: ScalarExpr) -> CheckResult:
        return check_scalar_zero(
            "bracket_via_X", "{f,g} = -omega(X_f,X_g) - f*H_alpha(g) + g*H_alpha(f)",
            self(f, g) - self.alternative(f, g), self.lrj.chart, self.plan,
        )


def jacobi_bracket(
    f: ScalarExpr,
    g: ScalarExpr,
    lrj: LrjData,
    H: DiffOp,
    plan: Optional[SamplePlan] = None,
) -> ScalarExpr:
    """
    {f, g} = -omega(phi_f, phi_g).

    Raises:
        InternalConsistencyError: the value disagrees with the X_f form
    """
    bracket = JacobiBracket(lrj, H, plan)
    _require(bracket.check_alternative(f, g), "bracket via X_f")
    return bracket(f, g)


def check_jacobi_bracket(
    lrj: LrjData,
    H: DiffOp,
    triples: Iterable[Sequence[ScalarExpr]],
    plan: Optional[SamplePlan] = None,
) -> VerificationReport:
    """Skew-symmetry, Jacobi identity, first-order property and the X_f form on given triples."""
    plan = _plan(plan)
    chart = lrj.chart
    bracket = JacobiBracket(lrj, H, plan)
    skew, jacobi, first_order, alternative, splitting = [], [], [], [], []
    for f, g, h in triples:
        f, g, h = (normalize(sp.sympify(v)) for v in (f, g, h))
        skew.append(check_scalar_zero("", "", bracket(f, g) + bracket(g, f), chart, plan))
        cyclic = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g))
        jacobi.append(check_scalar_zero("", "", cyclic, chart, plan))
        leibniz_defect = (bracket(f * h, g) - f * bracket(h, g) - h * bracket(f, g)
                          + f * h * bracket(ONE, g))
        first_order.append(check_scalar_zero("", "", leibniz_defect, chart, plan))
        alternative.append(bracket.check_alternative(f, g))
        for v in (f, g, h):
            splitting.extend(bracket.pair(v).report.checks)

    report = VerificationReport(title="jacobi_bracket")
    report.add(combine("bracket_skew", "{f,g} = -{g,f}", skew))
    report.add(combine("bracket_jacobi", "{f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0", jacobi))
    report.add(combine("bracket_first_order", "{fh,g} - f{h,g} - h{f,g} + fh{1,g} = 0", first_order))
    report.add(combine("bracket_via_X", "{f,g} = -omega(X_f,X_g) - f*H_alpha(g) + g*H_alpha(f)", alternative))
    report.add(combine("hamiltonian_identities", "i_{X_f} omega and phi_f splitting", splitting))
    return report


# ------------------------------------------------------------ volume, exactness

def volume_check(lrj: LrjData, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """(i_1 omega)|X ^ (omega|X)^k is a volume form on a (2k+1)-chart."""
    plan = _plan(plan)
    chart = lrj.chart
    report = VerificationReport(title="volume")
    if chart.dim % 2 == 0:
        report.fail("volume_form", "(i_1 omega|X) ^ (omega|X)^k != 0", _even_dimension_message(chart))
        return report
    k = chart.dim // 2
    top = wedge(restrict_to_X(lrj.i_unit_omega), wedge_power(restrict_to_X(lrj.omega), k))
    report.add(check_nonvanishing(
        "volume_form", "(i_1 omega|X) ^ (omega|X)^k != 0", top_coefficient(top), chart, plan,
    ))
    return report


def check_conformal_exactness(lrj: LrjData, plan: Optional[SamplePlan] = None) -> VerificationReport:
    """[1 + alpha(1)] omega = delta_alpha(i_1 omega)."""
    plan = _plan(plan)
    report = VerificationReport(title="conformal_exactness")
    residual = lrj.omega.scale(ONE + lrj.alpha.unit_value) - delta_alpha(lrj.i_unit_omega, lrj.alpha)
    report.add(check_form_zero(
        "conformal_exactness", "[1+alpha(1)]*omega = delta_alpha(i_1 omega)", residual, plan,
    ))
    return report


def classify(lrj: LrjData, plan: Optional[SamplePlan] = None) -> Classification:
    """
    Exact contact when alpha(1) != -1, nonexact when alpha(1) = -1.

    For exact structures the primitive i_1(omega / (1 + alpha(1))) is
    returned and omega = delta_alpha(primitive) is verified.

    Raises:
        PreconditionError: alpha(1) is not a constant
    """
    plan = _plan(plan)
    unit_value = normalize(lrj.alpha.unit_value)
    if not unit_value.is_Number:
        raise PreconditionError(f"alpha(1) = {unit_value} is not constant")
    report = VerificationReport(title="classify")
    if unit_value == -ONE:
        report.flags.append(ContactKind.NONEXACT.value)
        return Classification(ContactKind.NONEXACT, unit_value, None, report)

    primitive = interior(DiffOp.unit(lrj.chart), lrj.omega.scale(ONE / (ONE + unit_value)))
    report.add(check_form_zero(
        "delta_alpha_exact", "omega = delta_alpha(i_1(omega / (1+alpha(1))))",
        lrj.omega - delta_alpha(primitive, lrj.alpha), plan,
    ))
    report.flags.append(ContactKind.EXACT.value)
    return Classification(ContactKind.EXACT, unit_value, primitive, report)
