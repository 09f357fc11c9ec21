"""
Configuration management for the Dagger Workbench.

This module provides centralized configuration management using Pydantic Settings
for loading environment variables, plus the validated ``SuiteConfig`` that
drives a verification run. Only logging and the thread count come from the
environment; run defaults are fixed so a report depends on its options alone.
"""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from dagger_workbench.core.exceptions import ConfigurationError

DEFAULT_TOL = 1e-9
DEFAULT_DIM_MIN = 1
DEFAULT_DIM_MAX = 5
DEFAULT_TRIALS = 200
DEFAULT_SEED = 42
FDHILB_MAX_DIM = 8
FINREL_MAX_CARRIER = 4

# Largest FinRel equaliser apex enumerated by default, and the refusal limit
FINREL_SEARCH_BOUND = 3
FINREL_MAX_SEARCH_BOUND = FINREL_MAX_CARRIER


class ModelId(StrEnum):
    """Concrete categories the workbench can instantiate."""

    FDHILB_R = "fdhilb-r"
    FDHILB_C = "fdhilb-c"
    FINREL = "finrel"


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="DAGGER_WORKBENCH_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application Configuration
    app_name: str = Field(
        default="Dagger Workbench",
        description="Application name",
    )

    app_version: str = Field(
        default="0.1.0",
        description="Application version",
    )

    # Logging Configuration
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )

    log_format: str = Field(
        default="text",
        description="Log format: 'json' or 'text'",
    )

    # Execution
    threads: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Worker threads used to run suites concurrently",
    )


# Global settings instance
settings = Settings()


class SuiteConfig(BaseModel):
    """A validated, immutable description of one verification run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelId = ModelId.FDHILB_C
    dim_min: int = Field(default=DEFAULT_DIM_MIN, ge=0)
    dim_max: int = Field(default=DEFAULT_DIM_MAX, ge=0)
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    tol: float = Field(default=DEFAULT_TOL, gt=0.0, lt=1.0)
    # None selects every registered suite, an empty tuple none
    suites: tuple[str, ...] | None = None

    @model_validator(mode="after")
    def _check_dimensions(self) -> "SuiteConfig":
        if self.dim_min > self.dim_max:
            raise ValueError(
                f"dim_min ({self.dim_min}) exceeds dim_max ({self.dim_max})"
            )
        limit = FINREL_MAX_CARRIER if self.model is ModelId.FINREL else FDHILB_MAX_DIM
        if self.dim_max > limit:
            raise ValueError(
                f"dim_max {self.dim_max} exceeds the limit {limit} for {self.model}"
            )
        return self

    @classmethod
    def build(cls, **options: object) -> "SuiteConfig":
        """
        Validate options into a SuiteConfig.

        Raises:
            ConfigurationError: if any option is out of range
        """
        # Exhaustive FinRel checks are exponential in the carrier size.
        if options.get("model") in (ModelId.FINREL, ModelId.FINREL.value):
            options.setdefault("dim_max", min(DEFAULT_DIM_MAX, 3))
        try:
            return cls.model_validate(options)
        except ValidationError as e:
            raise ConfigurationError(str(e)) from e
