"""Contact data and paths shared by the test modules."""

from pathlib import Path

from src.calculus.forms import coordinate_differential, wedge
from src.calculus.operators import DiffOp
from src.chart.chart import Chart
from src.structures.contact import ContactData

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
DATA = Path(__file__).resolve().parent / "data"


def _pairs(chart: Chart):
    return [("x", "y")] if chart.dim == 3 else [("x1", "y1"), ("x2", "y2")]


def _symplectic_part(chart: Chart):
    Omega = None
    for x, y in _pairs(chart):
        term = wedge(coordinate_differential(chart, x), coordinate_differential(chart, y))
        Omega = term if Omega is None else Omega + term
    return Omega


def standard_contact(chart: Chart, scale=1) -> ContactData:
    """beta = dz - sum y_i dx_i, Omega = scale * d(beta), E = d/dz."""
    beta = coordinate_differential(chart, "z")
    for x, y in _pairs(chart):
        beta = beta - coordinate_differential(chart, x).scale(chart.symbol(y))
    return ContactData(beta=beta, Omega=_symplectic_part(chart).scale(scale), E=DiffOp.partial(chart, "z"))


def closed_contact(chart: Chart) -> ContactData:
    """beta = dz, Omega = sum dx_i ^ dy_i, E = d/dz."""
    return ContactData(beta=coordinate_differential(chart, "z"), Omega=_symplectic_part(chart),
                       E=DiffOp.partial(chart, "z"))
