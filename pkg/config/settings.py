from functools import lru_cache
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="CATFLOW_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging Configuration
    log_level: str = Field(default="INFO")
    log_format: str = Field(default="plain")

    # Point identification
    zero_tol: float = Field(default=1e-14, gt=0)

    # Resolvent and prox solvers
    resolvent_tol: float = Field(default=1e-12, gt=0)
    resolvent_max_iter: int = Field(default=10_000, ge=1)
    prox_step_tol: float = Field(default=1e-10, gt=0)
    finite_difference_step: float = Field(default=1e-6, gt=0)
    golden_tol: float = Field(default=1e-12, gt=0)

    # Minimal-norm estimation
    min_norm_lambda: float = Field(default=1e-6, gt=0)
    infinite_norm_threshold: float = Field(default=1e12, gt=0)

    # Numeric Alexandrov angle fallback
    angle_scale: float = Field(default=1e-2, gt=0)
    angle_ratio: float = Field(default=0.5, gt=0, lt=1)
    angle_levels: int = Field(default=8, ge=2)

    # Exponential formula
    reference_steps: int = Field(default=8192, ge=1)
    max_flow_steps: int = Field(default=65536, ge=1)

    # Trajectory diagnostics
    tail_fraction: float = Field(default=0.5, gt=0, le=1)
    # None restarts the center search from every tail point
    center_restarts: Optional[int] = Field(default=None, ge=1)

    # Execution
    max_workers: int = Field(default=1, ge=1)
    default_seed: int = Field(default=42, ge=0)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of: {', '.join(valid_levels)}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v):
        if v.lower() not in ("plain", "detailed"):
            raise ValueError("LOG_FORMAT must be 'plain' or 'detailed'")
        return v.lower()

    @property
    def log_format_string(self) -> str:
        """Format string handed to logging.basicConfig"""
        if self.log_format == "detailed":
            return "%(asctime)s %(levelname)s %(name)s [%(funcName)s:%(lineno)d] %(message)s"
        return "%(asctime)s %(levelname)s %(name)s: %(message)s"


@lru_cache()
def get_settings() -> Settings:
    """Get catflow settings with caching"""
    return Settings()


# Global settings instance
settings = get_settings()
