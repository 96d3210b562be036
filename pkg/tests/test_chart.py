"""Charts, sample boxes and sampling plans."""

import pytest

from src.chart.chart import Chart, SamplePlan, sample_points, shrunken_box


def test_default_box_covers_every_coordinate():
    chart = Chart.default(("x", "y", "z"))
    assert chart.dim == 3
    assert chart.domain == ((-1.0, 1.0),) * 3


def test_single_interval_is_broadcast():
    chart = Chart("R2", ("x", "y"), ((0, 2),))
    assert chart.domain == ((0.0, 2.0), (0.0, 2.0))


@pytest.mark.parametrize("coords, domain", [
    ((), ()),
    (("x", "x"), ()),
    (("x", "y"), ((0, 1), (0, 1), (0, 1))),
    (("x",), ((1, 1),)),
])
def test_invalid_charts(coords, domain):
    with pytest.raises(ValueError):
        Chart("bad", coords, domain)


def test_symbols_and_indices():
    chart = Chart("R3", ("x", "y", "z"))
    assert [s.name for s in chart.symbols] == ["x", "y", "z"]
    assert chart.index("z") == 2
    assert chart.index(chart.symbol("y")) == 1
    with pytest.raises(ValueError):
        chart.index("w")


def test_sample_points_are_deterministic_and_inside_margin():
    chart = Chart("R2", ("x", "y"), ((0, 10), (-1, 1)))
    plan = SamplePlan(count=20, seed=5, margin=0.1)
    points = sample_points(chart, plan)
    assert points == sample_points(chart, plan)
    assert len(points) == 20
    box = shrunken_box(chart, plan.margin)
    assert box[0] == (1.0, 9.0)
    assert box[1] == pytest.approx((-0.8, 0.8))
    for point in points:
        assert all(lo <= v <= hi for v, (lo, hi) in zip(point, box))


def test_different_seeds_differ():
    chart = Chart.default(("x",))
    assert sample_points(chart, SamplePlan(seed=1)) != sample_points(chart, SamplePlan(seed=2))


@pytest.mark.parametrize("kwargs", [{"count": 0}, {"margin": 0.5}, {"tolerance": 0.0}])
def test_invalid_plans(kwargs):
    with pytest.raises(ValueError):
        SamplePlan(**kwargs)
