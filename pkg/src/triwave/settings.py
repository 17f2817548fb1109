from __future__ import annotations

from collections.abc import Callable
from typing import Any, TypeAlias

from decouple import config
from pydantic import BaseModel, Field

from ._logging.triwave_logger import triwave_logger as default_logger

LogFunction: TypeAlias = Callable[..., None]


class TriwaveSettings(BaseModel):
    """Numerical and reproducibility settings. Every field has a default."""

    seed: int = 42
    rect_aspect: int = Field(default=2, ge=1)
    quad_radial: int = Field(default=64, ge=2)
    quad_angular: int = Field(default=64, ge=2)
    tolerance: float = Field(default=1e-9, gt=0)
    boundary_tol: float = Field(default=1e-9, gt=0)
    case_scale: float = Field(default=1.0, gt=0)
    log: LogFunction = default_logger

    def model_post_init(self, __context: Any) -> None:
        """Log the loaded settings post init."""
        self.log(
            level="debug",
            action="settings loaded",
            seed=self.seed,
            rect_aspect=self.rect_aspect,
            quadrature=f"{self.quad_radial}x{self.quad_angular}",
            tolerance=self.tolerance,
        )

    @classmethod
    def from_config(cls, log: LogFunction = default_logger) -> TriwaveSettings:
        """Creates a TriwaveSettings object from environment variables."""
        return cls(
            seed=config("TRIWAVE_SEED", default=42, cast=int),
            rect_aspect=config("TRIWAVE_RECT_ASPECT", default=2, cast=int),
            quad_radial=config("TRIWAVE_QUAD_RADIAL", default=64, cast=int),
            quad_angular=config("TRIWAVE_QUAD_ANGULAR", default=64, cast=int),
            tolerance=config("TRIWAVE_TOLERANCE", default=1e-9, cast=float),
            boundary_tol=config(
                "TRIWAVE_BOUNDARY_TOL", default=1e-9, cast=float
            ),
            case_scale=config("TRIWAVE_CASE_SCALE", default=1.0, cast=float),
            log=log,
        )

    def cases(self, count: int) -> int:
        """Scale a suite's nominal case count, never below one."""
        return max(1, round(count * self.case_scale))
