"""
LRJ Calculus Workbench
Command-Line Interface

    lrjcalc check FILE [--samples N --seed S --tolerance T --report PATH --only GLOB]
    lrjcalc selftest [--seed S --instances N]
    lrjcalc reeb FILE STRUCTURE
    lrjcalc bracket FILE STRUCTURE F G
    lrjcalc classify FILE STRUCTURE

Exit status: 0 when no check failed, 1 when a check failed, 2 when the
input does not parse.
"""

import logging
from pathlib import Path
from typing import Optional, Tuple

import click
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..chart.chart import SamplePlan
from ..config.log_setup import configure_logging
from ..config.settings import settings
from ..dsl.document import GeoDocument
from ..dsl.lexer import ParseError
from ..dsl.parser import parse_file, parse_scalar
from ..dsl.printer import format_op, format_scalar
from ..structures.errors import StructureError
from ..structures.lrj import check_lrj_D, classify as classify_structure, jacobi_bracket, reeb as reeb_operator
from ..structures.report import Grade, VerificationReport
from .runner import CheckRunner, RunOutcome
from .schema import JsonReport, RunConfig
from .selftest import CartanSuite

logger = logging.getLogger(__name__)

console = Console(highlight=False, soft_wrap=True)

GRADE_STYLES = {
    Grade.EXACT: "green",
    Grade.PROBABILISTIC: "cyan",
    Grade.INDETERMINATE: "yellow",
    Grade.FAILED: "bold red",
}


def _load(path: str) -> GeoDocument:
    try:
        return parse_file(path)
    except ParseError as exc:
        console.print(f"{path}:{exc.line}:{exc.column}: parse error: {exc.message}", markup=False)
        raise SystemExit(2)


def _render(report: VerificationReport) -> None:
    table = Table(title=report.title, show_lines=False)
    table.add_column("check")
    table.add_column("grade")
    table.add_column("identity")
    table.add_column("witness / detail")
    for check in report.checks:
        style = GRADE_STYLES[check.grade]
        table.add_row(check.name, f"[{style}]{check.grade.value}[/{style}]", check.reference,
                      check.witness or check.detail)
    console.print(table)
    console.print(f"overall: {report.overall.value}")


def _plan(samples: Optional[int], seed: Optional[int], tolerance: Optional[float]) -> SamplePlan:
    return SamplePlan(
        count=settings.samples if samples is None else samples,
        seed=settings.seed if seed is None else seed,
        margin=settings.margin,
        tolerance=settings.tolerance if tolerance is None else tolerance,
    )


def _lrj_for(document: GeoDocument, name: str, plan: SamplePlan):
    """The verified LRJ structure named ``name`` (lrj or lift), or exit 1."""
    try:
        decl = document.structure(name)
    except KeyError:
        console.print(f"no structure named {name}", markup=False)
        raise SystemExit(1)
    if decl.kind not in ("lrj", "lift"):
        console.print(f"{name} is a {decl.kind} structure, not a structure on D(M)", markup=False)
        raise SystemExit(1)
    outcome = RunOutcome(report=VerificationReport(title=name))
    lrj = CheckRunner(document, plan).lrj_for(decl, plan, outcome)
    if lrj is None or not outcome.report.passed or not check_lrj_D(lrj, plan).passed:
        console.print(f"structure {name} does not verify", markup=False)
        raise SystemExit(1)
    return lrj


sample_options = [
    click.option("--samples", type=click.IntRange(min=1), default=None, help="Sample points per graded check."),
    click.option("--seed", type=int, default=None, help="Sampling seed (falls back to LRJCALC_SEED)."),
    click.option("--tolerance", type=click.FloatRange(min=0, min_open=True), default=None,
                 help="Relative tolerance of probabilistic checks."),
]


def with_sample_options(command):
    for option in reversed(sample_options):
        command = option(command)
    return command


@click.group()
@click.version_option(__version__, prog_name="lrjcalc")
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool) -> None:
    """Cartan calculus on first-order differential operators."""
    configure_logging("DEBUG" if verbose else None)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@with_sample_options
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here.")
@click.option("--only", multiple=True, help="Keep only checks whose name matches this glob.")
@click.option("--timings", is_flag=True, default=None, help="Record milliseconds per check in the JSON report.")
def check(path: str, samples: Optional[int], seed: Optional[int], tolerance: Optional[float],
          report_path: Optional[str], only: Tuple[str, ...], timings: Optional[bool]) -> None:
    """Run the check directives of a .geo file."""
    config = RunConfig(
        input_path=Path(path),
        report_path=Path(report_path) if report_path else None,
        only=list(only),
        **{k: v for k, v in
           {"samples": samples, "seed": seed, "tolerance": tolerance, "timings": timings}.items() if v is not None},
    )
    document = _load(path)
    outcome = CheckRunner(document, config.plan(), only=config.only).run()
    _render(outcome.report)
    for result in outcome.results:
        console.print(f"{result.target} {result.kind}: {result.value}", markup=False)
    if config.report_path is not None:
        report = JsonReport.build(config, document.chart, outcome.report, outcome.results)
        config.report_path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    raise SystemExit(1 if outcome.failed else 0)


@cli.command()
@click.option("--seed", type=int, default=None, help="Seed of the random inputs.")
@click.option("--instances", type=click.IntRange(min=1), default=None, help="Instances per chart.")
@click.option("--break-wedge-sign", is_flag=True, hidden=True)
def selftest(seed: Optional[int], instances: Optional[int], break_wedge_sign: bool) -> None:
    """Randomized Cartan-identity suites on R^3 and R^5."""
    seed = settings.seed if seed is None else seed
    report = CartanSuite(seed=seed, instances=instances, break_wedge_sign=break_wedge_sign).run()
    _render(report)
    for failure in report.failures():
        console.print(f"violated: {failure.name}: {failure.reference}: {failure.witness}", markup=False)
    raise SystemExit(1 if report.failures() else 0)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.argument("structure")
@with_sample_options
def reeb(path: str, structure: str, samples, seed, tolerance) -> None:
    """Print the Reeb operator H with i_H(omega) = -delta(1)."""
    plan = _plan(samples, seed, tolerance)
    lrj = _lrj_for(_load(path), structure, plan)
    try:
        H = reeb_operator(lrj.omega, plan)
    except StructureError as exc:
        console.print(f"degenerate: {exc}", markup=False)
        raise SystemExit(1)
    console.print(f"H = {format_op(H)}", markup=False)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.argument("structure")
@click.argument("f")
@click.argument("g")
@with_sample_options
def bracket(path: str, structure: str, f: str, g: str, samples, seed, tolerance) -> None:
    """Print the Jacobi bracket {F, G}."""
    plan = _plan(samples, seed, tolerance)
    document = _load(path)
    lrj = _lrj_for(document, structure, plan)
    try:
        f_expr, g_expr = (parse_scalar(text, document) for text in (f, g))
        value = jacobi_bracket(f_expr, g_expr, lrj, reeb_operator(lrj.omega, plan), plan)
    except ParseError as exc:
        console.print(f"parse error: {exc.message}", markup=False)
        raise SystemExit(2)
    except StructureError as exc:
        console.print(f"degenerate: {exc}", markup=False)
        raise SystemExit(1)
    console.print(format_scalar(value), markup=False)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.argument("structure")
@with_sample_options
def classify(path: str, structure: str, samples, seed, tolerance) -> None:
    """Print exact or nonexact."""
    plan = _plan(samples, seed, tolerance)
    lrj = _lrj_for(_load(path), structure, plan)
    try:
        verdict = classify_structure(lrj, plan)
    except StructureError as exc:
        console.print(str(exc), markup=False)
        raise SystemExit(1)
    console.print(verdict.kind.value, markup=False)
    raise SystemExit(0 if verdict.report.passed else 1)


def main() -> None:
    cli(prog_name="lrjcalc")
