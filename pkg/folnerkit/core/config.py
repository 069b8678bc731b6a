"""Configuration management for folnerkit."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class BudgetConfig(BaseSettings):
    """Enumeration budgets."""

    model_config = SettingsConfigDict(env_prefix="FOLNERKIT_BUDGET_")

    max_patterns: int = Field(default=2**24)
    max_set_size: int = Field(default=2_000_000)
    exact_sites: int = Field(default=64)
    certificate_sites: int = Field(default=12)
    certificate_patterns: int = Field(default=2**16)


class SolverConfig(BaseSettings):
    """Variational solver tolerances."""

    model_config = SettingsConfigDict(env_prefix="FOLNERKIT_SOLVER_")

    moment_tol: float = Field(default=1e-9)
    max_iter: int = Field(default=200)
    strict_margin: float = Field(default=1e-9)


class RunConfig(BaseSettings):
    """Runner behaviour."""

    model_config = SettingsConfigDict(env_prefix="FOLNERKIT_RUN_")

    workers: int = Field(default=1)
    log_json: bool = Field(default=False)
    log_level: str = Field(default="INFO")


class Settings(BaseSettings):
    """Global application settings."""

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    app_name: str = "folnerkit"
    debug: bool = Field(default=False)
    budget: BudgetConfig = Field(default_factory=BudgetConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    run: RunConfig = Field(default_factory=RunConfig)


settings = Settings()
