"""CLI module initialization."""
from .main import cli, main
from .runner import CheckRunner, RunOutcome
from .schema import RunConfig, JsonReport, CheckEntry, ComputedEntry, ChartSummary
from .selftest import CartanSuite, IDENTITIES

__all__ = [
    "cli", "main", "CheckRunner", "RunOutcome",
    "RunConfig", "JsonReport", "CheckEntry", "ComputedEntry", "ChartSummary",
    "CartanSuite", "IDENTITIES"
]
