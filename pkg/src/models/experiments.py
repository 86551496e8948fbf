"""Pydantic models for the randomized feasibility experiments."""
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

N_LIMITS = (3, 64)


class ExperimentConfig(BaseModel):
    """Grid of (n, sigma) cells and how each trial is drawn."""

    model_config = ConfigDict(frozen=True)

    n_min: int = Field(..., description="Smallest matrix size (inclusive)")
    n_max: int = Field(..., description="Largest matrix size (inclusive)")
    k_rule: Union[Literal["random"], int] = Field(
        "random", description="Unknowns per trial: a fixed count or 'random' (uniform in 1..n-1)"
    )
    trials: int = Field(..., ge=1, description="Trials per cell")
    sigmas: Tuple[float, ...] = Field(..., description="Standard deviations of the log-normal perturbation")
    scale_bound: float = Field(9.0, gt=1, description="Judgments are clamped to [1/S, S]")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="Master seed")
    workers: int = Field(1, ge=1, description="Thread count; results do not depend on it")

    @field_validator("sigmas")
    @classmethod
    def _check_sigmas(cls, sigmas: Tuple[float, ...]) -> Tuple[float, ...]:
        if not sigmas:
            raise ValueError("at least one perturbation level is required")
        for sigma in sigmas:
            if not sigma >= 0:
                raise ValueError(f"perturbation levels must be >= 0, got {sigma!r}")
        return sigmas

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentConfig":
        low, high = N_LIMITS
        if not low <= self.n_min <= self.n_max <= high:
            raise ValueError(f"need {low} <= n_min <= n_max <= {high}, got {self.n_min}..{self.n_max}")
        if self.k_rule != "random" and not 1 <= self.k_rule <= self.n_min - 1:
            raise ValueError(f"a fixed k must lie in 1..{self.n_min - 1}, got {self.k_rule}")
        return self

    @property
    def sizes(self) -> range:
        return range(self.n_min, self.n_max + 1)


class ExperimentCell(BaseModel):
    """Aggregates of one (n, sigma) cell."""

    model_config = ConfigDict(frozen=True)

    n: int
    sigma: float
    trials: int = Field(..., ge=1)
    geometric_feasible_rate: float = Field(..., ge=0, le=1)
    arithmetic_feasible_rate: float = Field(..., ge=0, le=1)
    mean_koczkodaj: float = Field(..., ge=0)
    geometric_singular_count: int = Field(0, ge=0)
    arithmetic_singular_count: int = Field(0, ge=0)
    arithmetic_dominant_rate: float = Field(
        ..., ge=0, le=1, description="Share of trials whose arithmetic system was strictly diagonally dominant"
    )
    geometric_max_recovery_error: Optional[float] = Field(
        None, ge=0, description="Max relative deviation of the unknowns from the generating weights"
    )
    arithmetic_max_recovery_error: Optional[float] = Field(
        None, ge=0, description="Same, over arithmetic trials that were feasible"
    )


class ExperimentResult(BaseModel):
    """All cells of an experiment, ordered by n then sigma."""

    model_config = ConfigDict(frozen=True)

    config: ExperimentConfig
    cells: List[ExperimentCell]
