"""Scalar expressions and graded zero testing."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings as hyp_settings, strategies as st

from src.cas.expressions import (
    EvaluationError, const, diff, div, evaluate, is_constant, is_transcendental, normal_form, normalize, power,
)
from src.cas.zero_test import ZeroGrade, ZeroKind, is_zero, weakest
from src.calculus.sampling import RandomSource
from src.chart.chart import Chart, SamplePlan, sample_points

x, y, z = sp.symbols("x y z")
R3 = Chart("R3", ("x", "y", "z"))
seeds = st.integers(min_value=0, max_value=2 ** 16)
few = hyp_settings(max_examples=10, deadline=None)


class TestNormalize:
    def test_polynomial_identity_reduces_to_zero(self):
        assert normalize((x + 1) ** 2 - x ** 2 - 2 * x - 1) == 0

    def test_rational_function_is_cancelled(self):
        assert normalize(div(x ** 2 - 1, x - 1)) == x + 1

    def test_transcendental_arguments_are_normalized(self):
        assert normalize(sp.sin((x + 1) ** 2) - sp.sin(x ** 2 + 2 * x + 1)) == 0

    def test_division_records_caveat(self):
        nf = normal_form(div(x, x))
        assert nf.expr == 1
        assert nf.caveats == (x,)

    def test_negative_power_is_a_division(self):
        caveats = normal_form(power(x + y, -2)).caveats
        assert len(caveats) == 1
        assert normalize(caveats[0] - (x + y) ** 2) == 0

    def test_constants_are_exact(self):
        assert const(Fraction(1, 3)) == sp.Rational(1, 3)
        assert const(4) == sp.Integer(4)
        with pytest.raises(TypeError):
            const(0.5)

    def test_division_by_constant_zero(self):
        with pytest.raises(ZeroDivisionError):
            div(x, sp.Integer(0))

    def test_classifiers(self):
        assert is_transcendental(sp.exp(x) * y)
        assert not is_transcendental(x * y)
        assert is_constant(normalize(x - x + 3))
        assert not is_constant(x)


class TestDiff:
    def test_sum_with_a_transcendental_term(self):
        assert diff(x * y + sp.sin(x), x) == y + sp.cos(x)

    def test_constant(self):
        assert diff(sp.Rational(7, 3), x) == 0

    def test_chain_rule(self):
        assert normalize(diff(sp.exp(2 * x), "x") - 2 * sp.exp(2 * x)) == 0

    def test_mixed_partials_commute(self):
        e = sp.sin(x * y) * sp.exp(z) + div(x ** 2, 1 + y ** 2)
        for a, b in [(x, y), (x, z), (y, z)]:
            assert is_zero(diff(diff(e, a), b) - diff(diff(e, b), a), seed=2, chart=R3).passed

    @few
    @given(seed=seeds)
    def test_product_rule(self, seed):
        source = RandomSource(R3, seed=seed, max_degree=2, density=0.5)
        a, b = source.polynomial(), source.polynomial()
        for s in R3.symbols:
            residual = diff(a * b, s) - a * diff(b, s) - b * diff(a, s)
            assert is_zero(residual, chart=R3).kind is ZeroKind.EXACT


class TestEvaluate:
    def test_positional_point_uses_chart_order(self):
        assert evaluate(x - 2 * z, (1.0, 5.0, 3.0), R3) == pytest.approx(-5.0)
        assert evaluate(x * y, (2, 3, 0), R3) == pytest.approx(6.0)
        assert evaluate(sp.exp(sp.Integer(0)) + 0 * x, (0.3, 0.1, 0.2), R3) == pytest.approx(1.0)

    def test_mapping_point(self):
        assert evaluate(x * y, {"x": 2, "y": 3}) == pytest.approx(6.0)

    def test_division_by_zero_names_the_denominator(self):
        with pytest.raises(EvaluationError) as info:
            evaluate(div(sp.Integer(1), x - y), {"x": 1.0, "y": 1.0})
        assert info.value.subexpression == x - y

    def test_reciprocal_at_the_origin(self):
        with pytest.raises(EvaluationError) as info:
            evaluate(div(sp.Integer(1), x), {"x": 0.0})
        assert info.value.subexpression == x
        assert info.value.point == (0.0,)

    def test_vanishing_denominator_is_picked_among_several(self):
        e = div(sp.Integer(1), x + 2) + div(y, x * y - 1)
        with pytest.raises(EvaluationError) as info:
            evaluate(e, {"x": 1.0, "y": 1.0})
        assert info.value.subexpression == x * y - 1

    def test_missing_coordinate(self):
        with pytest.raises(ValueError):
            evaluate(x + z, {"x": 1.0})

    def test_normalize_does_not_change_values(self):
        source = RandomSource(R3, seed=17, max_degree=2, density=0.5)
        points = sample_points(R3, SamplePlan(count=100, seed=23))
        assert len(points) == 100
        for _ in range(3):
            p, q, r = source.polynomial(), source.polynomial(), source.polynomial()
            e = div(p, 2 + q ** 2) + sp.sin(r * (x + 1)) - (x + y) ** 3
            reduced = normalize(e)
            for point in points:
                assert evaluate(reduced, point, R3) == pytest.approx(evaluate(e, point, R3), rel=1e-9, abs=1e-9)


class TestIsZero:
    def test_exact_for_rational_identities(self):
        assert is_zero(div(x ** 2 - y ** 2, x - y) - x - y).kind is ZeroKind.EXACT

    def test_probabilistic_for_pythagoras(self):
        grade = is_zero(sp.sin(x) ** 2 + sp.cos(x) ** 2 - 1, samples=16, seed=1)
        assert grade.kind is ZeroKind.PROBABILISTIC
        assert grade.passed

    def test_nonzero_polynomial_has_witness(self):
        grade = is_zero(x * y + z ** 2, samples=8, seed=3)
        assert grade.kind is ZeroKind.NONZERO
        assert grade.witness_point is not None and len(grade.witness_point) == 3
        assert grade.witness_value != 0

    def test_nonzero_transcendental(self):
        grade = is_zero(sp.sin(x) - x, samples=16, seed=5)
        assert grade.kind is ZeroKind.NONZERO
        assert not grade.passed

    def test_indeterminate_when_nothing_evaluates(self):
        grade = is_zero(sp.exp(x + 800) - sp.exp(y), samples=4, seed=0)
        assert grade.kind is ZeroKind.INDETERMINATE

    def test_deterministic_for_fixed_seed(self):
        e = sp.sin(x * y) - x * y
        assert is_zero(e, samples=10, seed=9) == is_zero(e, samples=10, seed=9)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            is_zero(x, samples=0)
        with pytest.raises(ValueError):
            is_zero(x, tol=0.0)


def test_weakest_grade():
    grades = [ZeroGrade.exact(), ZeroGrade.probabilistic(8, 1e-9), ZeroGrade.exact()]
    assert weakest(grades).kind is ZeroKind.PROBABILISTIC
    assert weakest([]).kind is ZeroKind.EXACT
    assert weakest(grades + [ZeroGrade.nonzero((0.1,), 2.0)]).kind is ZeroKind.NONZERO
