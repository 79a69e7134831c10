"""
hermlab.core.config

Validated configuration models for the verification harness and the metric search.
"""

import os
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

TOLERANCE_ENV = "HERMLAB_TOL"
DEFAULT_TOLERANCE = 1e-9


class HarnessConfig(BaseModel):
    """Tolerance and execution settings shared by predicates and checks."""

    tol: float = Field(default=DEFAULT_TOLERANCE, gt=0.0)
    seed: Optional[int] = None
    debug: bool = False
    workers: int = Field(default=1, ge=1)

    @classmethod
    def from_env(cls, **overrides: Any) -> "HarnessConfig":
        """
        Build a config from ``HERMLAB_TOL`` and explicit overrides.
        Overrides whose value is None are ignored, so unset CLI flags fall through.
        :raises ConfigError: If a value fails validation.
        """
        values = {}
        raw = os.environ.get(TOLERANCE_ENV)
        if raw is not None and raw.strip():
            values["tol"] = raw.strip()
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

    def threshold(self, scale: float) -> float:
        """Pass threshold for a residual with the given scale."""
        return self.tol * (1.0 + scale)


class SearchOptions(BaseModel):
    """Options for the SKL metric search."""

    max_iter: int = Field(default=5000, ge=1)
    step_tol: float = Field(default=1e-12, ge=0.0)
    residual_tol: float = Field(default=1e-8, gt=0.0)
    seed: int = 0
    method: Literal["nelder-mead", "powell"] = "nelder-mead"
    perturbation: float = Field(default=0.1, gt=0.0)

    @classmethod
    def build(cls, **values: Any) -> "SearchOptions":
        """
        Validate search options, dropping None values.
        :raises ConfigError: If a value fails validation.
        """
        try:
            return cls(**{k: v for k, v in values.items() if v is not None})
        except ValidationError as e:
            raise ConfigError(f"Invalid search options: {e}") from e
