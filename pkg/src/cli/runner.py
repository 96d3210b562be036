"""
LRJ Calculus Workbench
Check Runner

Executes the check directives of a document in order and collects one
report. Check names are prefixed with the structure they belong to, so
``--only 'std/*'`` selects a single structure.
"""

import logging
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from typing import Callable, List, Optional, Sequence

from ..calculus.operators import DiffOp
from ..chart.chart import SamplePlan
from ..dsl.document import CheckDirective, GeoDocument, StructureDecl
from ..dsl.printer import format_op, format_scalar
from ..structures.contact import contact_data_check, lift_contact
from ..structures.errors import StructureError
from ..structures.lcs import check_lcs
from ..structures.lrj import (
    JacobiBracket, LrjData, check_conformal_exactness, check_jacobi_bracket, check_lrj_D,
    check_module_isos, classify, reeb, volume_check,
)
from ..structures.report import CheckResult, Grade, VerificationReport
from .schema import ComputedEntry

logger = logging.getLogger(__name__)

UNVERIFIED = "structure {name} does not verify"


@dataclass
class RunOutcome:
    """Everything one run produced, in directive order."""
    report: VerificationReport
    results: List[ComputedEntry] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return bool(self.report.failures())


class CheckRunner:
    """Runs the check directives of a document."""

    def __init__(self, document: GeoDocument, plan: SamplePlan, only: Sequence[str] = ()):
        """
        Initialize the runner.

        Args:
            document: Parsed document
            plan: Default sampling plan (directives may override seed/samples/tolerance)
            only: Check-name globs; empty keeps every check
        """
        self.document = document
        self.plan = plan
        self.only = list(only)

    def run(self) -> RunOutcome:
        outcome = RunOutcome(report=VerificationReport(title=self.document.chart.name))
        for directive in self.document.checks:
            self._run_directive(directive, outcome)
        if self.only:
            outcome.report.checks = [
                c for c in outcome.report.checks if any(fnmatchcase(c.name, g) for g in self.only)
            ]
            outcome.results = [
                r for r in outcome.results if any(fnmatchcase(f"{r.target}/{r.kind}", g) for g in self.only)
            ]
        return outcome

    # ---------------------------------------------------------------- helpers
    def _plan_for(self, directive: CheckDirective) -> SamplePlan:
        return SamplePlan(
            count=directive.samples or self.plan.count,
            seed=self.plan.seed if directive.seed is None else directive.seed,
            margin=self.plan.margin,
            tolerance=directive.tolerance or self.plan.tolerance,
        )

    @staticmethod
    def _merge(outcome: RunOutcome, prefix: str, report: VerificationReport) -> None:
        for check in report.checks:
            check.name = f"{prefix}/{check.name}"
            outcome.report.add(check)
        for flag in report.flags:
            tagged = f"{prefix}:{flag}"
            if tagged not in outcome.report.flags:
                outcome.report.flags.append(tagged)

    @staticmethod
    def _failure(outcome: RunOutcome, name: str, reference: str, reason: str) -> None:
        outcome.report.add(CheckResult(name, reference, Grade.FAILED, witness=reason))

    def _guarded(self, outcome: RunOutcome, name: str, reference: str, action: Callable[[], None]) -> bool:
        try:
            action()
            return True
        except StructureError as exc:
            logger.warning("%s: %s", name, exc)
            self._failure(outcome, name, reference, str(exc))
            return False

    # ------------------------------------------------------------- directives
    def _run_directive(self, directive: CheckDirective, outcome: RunOutcome) -> None:
        decl = self.document.structure(directive.target)
        plan = self._plan_for(directive)
        name = decl.name
        logger.info("checking %s %s", decl.kind, name)

        if decl.kind == "lcs":
            self._merge(outcome, name, check_lcs(self.document.lcs_data(decl), plan))
            return
        if decl.kind == "contact":
            self._merge(outcome, name, contact_data_check(self.document.contact_data(decl), plan))
            return

        lrj = self.lrj_for(decl, plan, outcome)
        if lrj is None:
            return
        structure_report = check_lrj_D(lrj, plan)
        self._merge(outcome, name, structure_report)
        self._run_options(directive, decl, lrj, structure_report.passed, plan, outcome)

    def lrj_for(self, decl: StructureDecl, plan: SamplePlan, outcome: RunOutcome) -> Optional[LrjData]:
        if decl.kind == "lrj":
            return self.document.lrj_data(decl)
        lifted = []

        def lift() -> None:
            lifted.append(lift_contact(self.document.contact_data(decl), decl.value("c"), decl.value("g"), plan))

        if not self._guarded(outcome, f"{decl.name}/lift", "Omega~ = Omega_bar + delta(1) ^ beta~", lift):
            return None
        self._merge(outcome, decl.name, lifted[0].report)
        return lifted[0].lrj

    def _run_options(self, directive: CheckDirective, decl: StructureDecl, lrj: LrjData,
                     verified: bool, plan: SamplePlan, outcome: RunOutcome) -> None:
        name = decl.name
        if "volume" in directive.flags:
            self._merge(outcome, name, volume_check(lrj, plan))
        if "exactness" in directive.flags:
            self._merge(outcome, name, check_conformal_exactness(lrj, plan))

        wants_reeb = ("reeb" in directive.flags or "modules" in directive.flags
                      or directive.brackets or directive.jacobi or directive.hamiltonians)
        if "classify" in directive.flags:
            self._classify(name, lrj, verified, plan, outcome)
        if not wants_reeb:
            return
        if not verified:
            self._failure(outcome, f"{name}/reeb", "i_H(omega) = -delta(1)", UNVERIFIED.format(name=name))
            return
        found: List[DiffOp] = []
        if not self._guarded(outcome, f"{name}/reeb", "i_H(omega) = -delta(1)",
                             lambda: found.append(reeb(lrj.omega, plan))):
            return
        H = found[0]
        if "reeb" in directive.flags:
            outcome.results.append(ComputedEntry(target=name, kind="reeb", value=f"H = {format_op(H)}"))
        if "modules" in directive.flags:
            self._guarded(outcome, f"{name}/module_isos", "i_phi(omega) isomorphisms",
                          lambda: self._merge(outcome, name, check_module_isos(lrj.omega, H, plan)))
        self._brackets(directive, name, lrj, H, plan, outcome)

    def _classify(self, name: str, lrj: LrjData, verified: bool, plan: SamplePlan, outcome: RunOutcome) -> None:
        if not verified:
            self._failure(outcome, f"{name}/classify", "alpha(1) = -1 <=> nonexact", UNVERIFIED.format(name=name))
            return

        def run() -> None:
            verdict = classify(lrj, plan)
            self._merge(outcome, name, verdict.report)
            outcome.results.append(ComputedEntry(target=name, kind="classification", value=verdict.kind.value))

        self._guarded(outcome, f"{name}/classify", "alpha(1) = -1 <=> nonexact", run)

    def _brackets(self, directive: CheckDirective, name: str, lrj: LrjData, H: DiffOp,
                  plan: SamplePlan, outcome: RunOutcome) -> None:
        bracket = JacobiBracket(lrj, H, plan)

        def evaluate_pairs() -> None:
            for f, g in directive.brackets:
                outcome.report.add(_renamed(bracket.check_alternative(f, g), f"{name}/bracket_via_X"))
                value = bracket(f, g)
                outcome.results.append(ComputedEntry(
                    target=name, kind="bracket",
                    value=f"{{{format_scalar(f)}, {format_scalar(g)}}} = {format_scalar(value)}",
                ))
            for f in directive.hamiltonians:
                pair = bracket.pair(f)
                self._merge(outcome, name, pair.report)
                outcome.results.append(ComputedEntry(
                    target=name, kind="hamiltonian",
                    value=f"phi_f = {format_op(pair.phi_f)}; X_f = {format_op(pair.X_f)} for f = {format_scalar(f)}",
                ))
            if directive.jacobi:
                self._merge(outcome, name, check_jacobi_bracket(lrj, H, directive.jacobi, plan))

        self._guarded(outcome, f"{name}/bracket", "{f,g} = -omega(phi_f, phi_g)", evaluate_pairs)


def _renamed(result: CheckResult, name: str) -> CheckResult:
    result.name = name
    return result
