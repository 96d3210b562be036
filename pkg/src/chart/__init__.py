"""Chart module initialization."""
from .chart import Chart, SamplePlan, Point, sample_points, shrunken_box

__all__ = ["Chart", "SamplePlan", "Point", "sample_points", "shrunken_box"]
