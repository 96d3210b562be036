"""End-to-end runs of the lrjcalc command."""

import json
import time

import pytest
from click.testing import CliRunner

from src import __version__
from src.cli import cli
from src.cli.selftest import CartanSuite

from .helpers import CORPUS


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def corpus(name: str) -> str:
    return str(CORPUS / f"{name}.geo")


def run_check(runner, tmp_path, name, *extra, report="report.json"):
    path = tmp_path / report
    result = runner.invoke(cli, ["check", corpus(name), "--report", str(path), *extra])
    return result, json.loads(path.read_text(encoding="utf-8")), path


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_standard_contact_file_verifies_exactly(runner, tmp_path):
    result, report, _ = run_check(runner, tmp_path, "contact_r3")
    assert result.exit_code == 0, result.output
    assert report["overall"] == "exact"
    assert {c["grade"] for c in report["checks"]} == {"exact"}
    assert all(c["millis"] is None for c in report["checks"])
    assert {"target": "std0", "kind": "reeb", "value": "H = d/dz"} in report["results"]
    assert {"target": "std0", "kind": "classification", "value": "exact"} in report["results"]
    assert report["chart"] == {"name": "R3", "dim": 3, "coords": ["x", "y", "z"],
                               "domain": [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]}


def test_report_is_byte_identical_across_runs(runner, tmp_path):
    _, _, first = run_check(runner, tmp_path, "contact_r3_scaled", report="a.json")
    _, _, second = run_check(runner, tmp_path, "contact_r3_scaled", report="b.json")
    assert first.read_bytes() == second.read_bytes()


def test_timings_are_opt_in(runner, tmp_path):
    _, report, _ = run_check(runner, tmp_path, "empty_r2", "--timings")
    assert report["checks"] == []
    _, report, _ = run_check(runner, tmp_path, "contact_r3_scaled", "--timings")
    assert all(isinstance(c["millis"], float) for c in report["checks"])


def test_only_filters_checks_and_results(runner, tmp_path):
    result, report, _ = run_check(runner, tmp_path, "contact_r3", "--only", "std/*")
    assert result.exit_code == 0
    assert report["checks"]
    assert all(c["check"].startswith("std/") for c in report["checks"])
    assert report["results"] == []


def test_command_line_overrides_reach_the_report(runner, tmp_path):
    _, report, _ = run_check(runner, tmp_path, "lcs_r4", "--samples", "8", "--seed", "3", "--tolerance", "1e-6")
    assert (report["samples"], report["seed"], report["tolerance"]) == (8, 3, 1e-6)


@pytest.mark.parametrize("name", ["bad_omega_r3", "standard_c_minus_one_r3", "degenerate_r3"])
def test_failing_files_exit_one(runner, tmp_path, name):
    result, report, _ = run_check(runner, tmp_path, name)
    assert result.exit_code == 1
    assert report["overall"] == "failed"
    assert any(c["grade"] == "failed" and c["witness"] for c in report["checks"])


def test_malformed_input_exits_two(runner, tmp_path):
    path = tmp_path / "broken.geo"
    path.write_text("chart R3 (x, y, z);\nscalar f = x @;\n", encoding="utf-8")
    result = runner.invoke(cli, ["check", str(path)])
    assert result.exit_code == 2
    assert f"{path}:2:14: parse error: unexpected character '@'" in result.output


def test_reeb_command(runner):
    result = runner.invoke(cli, ["reeb", corpus("contact_r3"), "std0"])
    assert result.exit_code == 0
    assert "H = d/dz" in result.output


def test_reeb_rejects_contact_data_and_degenerate_structures(runner):
    assert runner.invoke(cli, ["reeb", corpus("contact_r3"), "std"]).exit_code == 1
    assert runner.invoke(cli, ["reeb", corpus("contact_r3"), "nothing"]).exit_code == 1
    assert runner.invoke(cli, ["reeb", corpus("degenerate_r3"), "flat"]).exit_code == 1


@pytest.mark.parametrize("f, g, expected", [("x", "x", "0"), ("x", "z", "-x"), ("x", "y", "-1")])
def test_bracket_command(runner, f, g, expected):
    result = runner.invoke(cli, ["bracket", corpus("contact_r3"), "std0", f, g])
    assert result.exit_code == 0, result.output
    assert result.output.strip().splitlines()[-1] == expected


def test_bracket_command_rejects_unknown_names(runner):
    result = runner.invoke(cli, ["bracket", corpus("contact_r3"), "std0", "q", "x"])
    assert result.exit_code == 2
    assert "unknown identifier q" in result.output


@pytest.mark.slow
def test_closed_r5_file_verifies(runner, tmp_path):
    result, report, _ = run_check(runner, tmp_path, "cosymplectic_r5")
    assert result.exit_code == 0, result.output
    assert report["chart"]["dim"] == 5
    assert report["overall"] in ("exact", "probabilistic")
    assert not {c["grade"] for c in report["checks"]} & {"failed", "indeterminate"}
    names = {c["check"] for c in report["checks"]}
    assert {"flat5_1/twisted_closure", "flat5_1/nondegenerate", "flat5_1/volume_form"} <= names
    assert {"target": "flat5_1", "kind": "reeb", "value": "H = d/dz"} in report["results"]
    assert {"target": "flat5_1", "kind": "classification", "value": "nonexact"} in report["results"]


@pytest.mark.parametrize("name, structure, verdict", [
    ("cosymplectic_r3", "flat1", "nonexact"),
    ("contact_r3", "std0", "exact"),
])
def test_classify_command(runner, name, structure, verdict):
    result = runner.invoke(cli, ["classify", corpus(name), structure])
    assert result.exit_code == 0, result.output
    assert result.output.strip().splitlines()[-1] == verdict


@pytest.mark.slow
def test_selftest_passes_and_is_deterministic(runner):
    first = runner.invoke(cli, ["selftest", "--seed", "5", "--instances", "2"])
    second = runner.invoke(cli, ["selftest", "--seed", "5", "--instances", "2"])
    assert first.exit_code == 0, first.output
    assert first.output == second.output


def test_selftest_catches_a_broken_wedge_sign(runner):
    result = runner.invoke(cli, ["selftest", "--instances", "1", "--break-wedge-sign"])
    assert result.exit_code == 1
    assert "violated: R3/graded_commutativity" in result.output


@pytest.mark.slow
def test_cartan_suite_has_no_failures_across_form_degrees():
    report = CartanSuite(seed=1, instances=3).run()
    assert report.failures() == []
    assert {c.name for c in report.checks} >= {"R3/interior_derivation", "R5/interior_derivation"}


@pytest.mark.slow
def test_default_selftest_fits_its_time_budget(runner):
    start = time.perf_counter()
    result = runner.invoke(cli, ["selftest", "--seed", "1"])
    elapsed = time.perf_counter() - start
    assert result.exit_code == 0, result.output
    assert elapsed < 30.0
