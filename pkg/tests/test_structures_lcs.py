"""Locally conformal symplectic pairs on X(M)."""

import pytest
import sympy as sp

from src.calculus.forms import coordinate_differential, wedge, XForm
from src.chart.chart import Chart
from src.structures.lcs import SYMPLECTIC_FLAG, LcsData, check_lcs
from src.structures.report import Grade


@pytest.fixture
def darboux(r4):
    d = {c: coordinate_differential(r4, c) for c in r4.coords}
    return wedge(d["x1"], d["y1"]) + wedge(d["x2"], d["y2"])


def test_conformal_example(r4, darboux, plan):
    x1 = r4.symbol("x1")
    data = LcsData(alpha=coordinate_differential(r4, "x1"), omega=darboux.scale(sp.exp(-x1)))
    report = check_lcs(data, plan)
    assert report["closed_alpha"].grade is Grade.EXACT
    assert report["conformal_closure"].grade is Grade.EXACT
    assert report["nondegenerate"].grade is Grade.PROBABILISTIC
    assert report.overall is Grade.PROBABILISTIC
    assert SYMPLECTIC_FLAG not in report.flags


def test_symplectic_is_flagged(r4, darboux, plan):
    report = check_lcs(LcsData(alpha=XForm.zero(r4, 1), omega=darboux), plan)
    assert report.overall is Grade.EXACT
    assert report.flags == [SYMPLECTIC_FLAG]


def test_wrong_conformal_factor_fails(r4, darboux, plan):
    x1 = r4.symbol("x1")
    data = LcsData(alpha=coordinate_differential(r4, "x1"), omega=darboux.scale(sp.exp(x1)))
    report = check_lcs(data, plan)
    failed = report["conformal_closure"]
    assert failed.grade is Grade.FAILED
    assert failed.witness.startswith("on (d/dx1, d/dx2, d/dy2)")


def test_non_closed_alpha_fails(r4, darboux, plan):
    alpha = coordinate_differential(r4, "x2").scale(r4.symbol("y1"))
    report = check_lcs(LcsData(alpha=alpha, omega=darboux), plan)
    assert report["closed_alpha"].grade is Grade.FAILED
    assert not report.passed


def test_degenerate_omega(r4, plan):
    d = {c: coordinate_differential(r4, c) for c in r4.coords}
    report = check_lcs(LcsData(alpha=XForm.zero(r4, 1), omega=wedge(d["x1"], d["y1"])), plan)
    assert report["nondegenerate"].grade is Grade.FAILED
    assert report["nondegenerate"].witness == "vanishes identically"


def test_odd_dimension_is_rejected(r3, plan):
    d = {c: coordinate_differential(r3, c) for c in r3.coords}
    report = check_lcs(LcsData(alpha=XForm.zero(r3, 1), omega=wedge(d["x"], d["y"])), plan)
    assert [c.name for c in report.checks] == ["dimension"]
    assert report.overall is Grade.FAILED


def test_degrees_are_validated(r4):
    dx1 = coordinate_differential(r4, "x1")
    with pytest.raises(ValueError):
        LcsData(alpha=wedge(dx1, coordinate_differential(r4, "y1")), omega=dx1)
