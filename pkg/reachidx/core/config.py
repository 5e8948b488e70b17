"""
Core configuration module - Environment-based settings

RULES:
- Every tunable has a default that works on a laptop-sized graph
- Out-of-range values fail fast at load time, never halfway through a build
- Environment variables use the REACHIDX_ prefix (e.g. REACHIDX_EPSILON=3)
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables"""

    # ======================
    # Pydantic Settings
    # ======================
    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="REACHIDX_",
        case_sensitive=True,
        extra="ignore",
    )

    # ======================
    # Environment
    # ======================
    ENV: str = "development"

    # ======================
    # Backbone / Hierarchy
    # ======================
    EPSILON: int = 2
    PRESELECT_ALPHA: float = 0.05
    MAX_LEVELS: int = 10
    CORE_LIMIT: int = 10000

    # ======================
    # Tree Cover (sampling)
    # ======================
    GROUP_SIZE: int = 1024
    THETA: float = 0.05
    DELTA: float = 0.05

    # ======================
    # Multi-tree refinement
    # ======================
    KTREE_K: int = 2
    KTREE_MAX_ITERS: int = 20

    # ======================
    # Online search (GRAIL)
    # ======================
    GRAIL_TRAVERSALS: int = 5

    # ======================
    # Oracle / Workloads
    # ======================
    ORACLE_VERTEX_CAP: int = Field(default=2**17)
    POSITIVE_BFS_LIMIT: int = 4096
    SEED: int = 0

    # ======================
    # Logging
    # ======================
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: str = ""

    # ======================
    # Validators & Helpers
    # ======================
    @field_validator("ENV", mode="before")
    @classmethod
    def normalize_env(cls, value: str) -> str:
        return (value or "development").strip().lower()

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, value: str) -> str:
        return (value or "WARNING").strip().upper()

    @property
    def is_production(self) -> bool:
        return self.ENV == "production"

    # ======================
    # Range Validation
    # ======================
    def validate_ranges(self) -> None:
        """
        Reject settings no build could run with.
        """
        errors: list[str] = []

        if self.EPSILON < 1:
            errors.append("EPSILON must be >= 1")
        if not 0.0 <= self.PRESELECT_ALPHA <= 1.0:
            errors.append("PRESELECT_ALPHA must be in [0, 1]")
        if not 0.0 < self.THETA < 1.0:
            errors.append("THETA must be in (0, 1)")
        if not 0.0 < self.DELTA < 1.0:
            errors.append("DELTA must be in (0, 1)")
        if self.GROUP_SIZE < 1:
            errors.append("GROUP_SIZE must be >= 1")
        if self.GRAIL_TRAVERSALS < 1:
            errors.append("GRAIL_TRAVERSALS must be >= 1")
        if self.MAX_LEVELS < 0:
            errors.append("MAX_LEVELS must be >= 0")
        if self.CORE_LIMIT < 1:
            errors.append("CORE_LIMIT must be >= 1")
        if self.KTREE_K < 1:
            errors.append("KTREE_K must be >= 1")
        if self.ORACLE_VERTEX_CAP < 1:
            errors.append("ORACLE_VERTEX_CAP must be >= 1")
        if self.POSITIVE_BFS_LIMIT < 1:
            errors.append("POSITIVE_BFS_LIMIT must be >= 1")
        if self.is_production and not self.LOG_FILE:
            errors.append("LOG_FILE must be set when ENV=production")

        if errors:
            raise ValueError(
                "Configuration invalid:\n"
                + "\n".join(f"- {e}" for e in errors)
            )


# ======================
# Settings Loader
# ======================
@lru_cache()
def get_settings() -> Settings:
    settings = Settings()
    settings.validate_ranges()
    return settings
