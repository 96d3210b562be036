"""
LRJ Calculus Workbench
Configuration Settings Module

This module handles all configuration using pydantic-settings
for type-safe environment variable loading (prefix ``LRJCALC_``).
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Workbench settings loaded from environment variables."""

    # Graded zero-testing
    samples: int = Field(
        default=32,
        ge=1,
        description="Number of sample points for probabilistic zero tests"
    )
    seed: int = Field(
        default=0,
        description="Seed used when no --seed is given (LRJCALC_SEED)"
    )
    tolerance: float = Field(
        default=1e-9,
        gt=0,
        description="Relative tolerance for probabilistic zero tests"
    )
    resample_factor: int = Field(
        default=4,
        ge=1,
        description="Extra draws per sample allowed when evaluation fails"
    )

    # Chart defaults
    margin: float = Field(default=0.1, ge=0.0, lt=0.5)
    domain_low: float = Field(default=-1.0)
    domain_high: float = Field(default=1.0)

    # Randomized verification
    random_trials: int = Field(
        default=5,
        ge=1,
        description="Random inputs per module-isomorphism check"
    )
    inverse_trials: int = Field(
        default=20,
        ge=1,
        description="Random linear forms per nondegeneracy round trip"
    )
    selftest_instances: int = Field(default=200, ge=1)

    # Logging / output
    log_level: str = Field(default="WARNING")
    report_timings: bool = Field(
        default=False,
        description="Record per-check milliseconds in JSON reports"
    )

    model_config = SettingsConfigDict(
        env_prefix="LRJCALC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def default_interval(self) -> tuple:
        """Per-coordinate interval of the default chart box."""
        return (self.domain_low, self.domain_high)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Convenience instance
settings = get_settings()
