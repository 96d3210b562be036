"""
LRJ Calculus Workbench
Coordinate Chart Context

A chart fixes the dimension, the coordinate names, and an axis-aligned
sample box. All geometry in the workbench is single-chart.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from ..config.settings import settings

Point = Tuple[float, ...]
Interval = Tuple[float, float]


@dataclass(frozen=True)
class Chart:
    """A coordinate chart with a sample box."""
    name: str
    coords: Tuple[str, ...]
    domain: Tuple[Interval, ...] = field(default=())

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError(f"Chart {self.name!r} needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise ValueError(f"Chart {self.name!r} has repeated coordinates: {coords}")

        domain = tuple(tuple(float(v) for v in iv) for iv in self.domain)
        if not domain:
            domain = (settings.default_interval,) * len(coords)
        elif len(domain) == 1 and len(coords) > 1:
            domain = domain * len(coords)
        if len(domain) != len(coords):
            raise ValueError(
                f"Chart {self.name!r}: {len(domain)} intervals for {len(coords)} coordinates"
            )
        for coord, (lo, hi) in zip(coords, domain):
            if not hi > lo:
                raise ValueError(f"Interval for {coord} must have positive length, got [{lo}, {hi}]")
        object.__setattr__(self, "domain", domain)

    @classmethod
    def default(cls, coords: Iterable[str], name: str = "chart") -> "Chart":
        """Chart over the default box [-1, 1]^n."""
        return cls(name=name, coords=tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @cached_property
    def symbols(self) -> Tuple[sp.Symbol, ...]:
        """Coordinate symbols, in chart order."""
        return tuple(sp.Symbol(c) for c in self.coords)

    def symbol(self, name: str) -> sp.Symbol:
        """Symbol of the named coordinate."""
        if name not in self.coords:
            raise ValueError(f"unknown coordinate {name}")
        return self.symbols[self.coords.index(name)]

    def index(self, coord) -> int:
        """Zero-based position of a coordinate given by name or symbol."""
        key = coord.name if isinstance(coord, sp.Symbol) else str(coord)
        if key not in self.coords:
            raise ValueError(f"unknown coordinate {key}")
        return self.coords.index(key)


@dataclass(frozen=True)
class SamplePlan:
    """How many points to draw, from which seed, how far from the box faces."""
    count: int = 32
    seed: int = 0
    margin: float = 0.1
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"SamplePlan.count must be >= 1, got {self.count}")
        if not 0.0 <= self.margin < 0.5:
            raise ValueError(f"SamplePlan.margin must lie in [0, 1/2), got {self.margin}")
        if not self.tolerance > 0:
            raise ValueError(f"SamplePlan.tolerance must be > 0, got {self.tolerance}")

    @classmethod
    def from_settings(cls, seed: Optional[int] = None) -> "SamplePlan":
        """Plan populated from the active settings."""
        return cls(
            count=settings.samples,
            seed=settings.seed if seed is None else seed,
            margin=settings.margin,
            tolerance=settings.tolerance,
        )


def shrunken_box(chart: Chart, margin: float) -> Tuple[Interval, ...]:
    """The chart box with ``margin`` of every interval cut from both ends."""
    return tuple(
        (lo + margin * (hi - lo), hi - margin * (hi - lo)) for lo, hi in chart.domain
    )


def sample_points(chart: Chart, plan: SamplePlan, count: Optional[int] = None) -> Sequence[Point]:
    """
    Draw points uniformly from the shrunken box.

    Args:
        chart: Chart supplying the box
        plan: Sample plan (seed, margin, count)
        count: Override of ``plan.count`` (used for resampling)

    Returns:
        Tuple of points, identical for identical inputs
    """
    n = plan.count if count is None else count
    box = shrunken_box(chart, plan.margin)
    rng = np.random.default_rng(plan.seed)
    low = np.array([lo for lo, _ in box])
    high = np.array([hi for _, hi in box])
    raw = rng.uniform(low, high, size=(n, chart.dim))
    return tuple(tuple(float(v) for v in row) for row in raw)
