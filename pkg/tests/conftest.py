"""Shared fixtures: charts, a fast sampling plan and contact data on R^3."""

import pytest

from src.chart.chart import Chart, SamplePlan
from src.structures.contact import ContactData

from .helpers import closed_contact, standard_contact


@pytest.fixture
def r3() -> Chart:
    return Chart("R3", ("x", "y", "z"), ((-1, 1),))


@pytest.fixture
def r4() -> Chart:
    return Chart("R4", ("x1", "y1", "x2", "y2"), ((-1, 1),))


@pytest.fixture
def r5() -> Chart:
    return Chart("R5", ("x1", "y1", "x2", "y2", "z"), ((-1, 1),))


@pytest.fixture
def plan() -> SamplePlan:
    return SamplePlan(count=12, seed=42)


@pytest.fixture
def std3(r3) -> ContactData:
    return standard_contact(r3)


@pytest.fixture
def closed3(r3) -> ContactData:
    return closed_contact(r3)
