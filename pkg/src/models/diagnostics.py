"""Pydantic models for optimality diagnostics of a priority vector."""
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class OptimalityReport(BaseModel):
    """Sum of squared log errors at a point, its gradient and Hessian diagnostics."""

    model_config = ConfigDict(frozen=True)

    error_value: float = Field(..., ge=0, description="Sum over i, j of (ln m_ij - ln(mu_i / mu_j))^2")
    gradient_max: float = Field(
        ..., ge=0, description="Max |de/dmu_i| over the unknown concepts (all concepts if none given)"
    )
    gradient: Tuple[float, ...] = Field(..., description="Analytic partial derivatives for every concept")
    sum_bound_condition: bool = Field(
        ..., description="mu_i < (n-1) * sum_{j != i} mu_j for every i (stated optimality condition)"
    )
    hessian_dominant: bool = Field(..., description="Strict row diagonal dominance of the full Hessian")
    hessian_positive_definite: bool = Field(..., description="Smallest Hessian eigenvalue is positive")
    hessian_positive_semidefinite: bool = Field(..., description="Smallest Hessian eigenvalue is not negative")
    hessian_min_eigenvalue: float = Field(..., description="Smallest eigenvalue of the full Hessian")
    hessian_max_eigenvalue: float = Field(..., description="Largest eigenvalue of the full Hessian")
    unknowns: Optional[Tuple[int, ...]] = Field(
        None, description="1-based concepts treated as free variables, when given"
    )
    restricted_dominant: Optional[bool] = Field(
        None, description="Strict row dominance of the Hessian block over the unknown concepts"
    )
    restricted_positive_definite: Optional[bool] = Field(
        None, description="Positive definiteness of the Hessian block over the unknown concepts"
    )

    @model_validator(mode="after")
    def _check_implication(self) -> "OptimalityReport":
        if self.hessian_dominant and not self.hessian_positive_definite:
            raise ValueError("a symmetric, diagonally dominant Hessian with positive diagonal is positive definite")
        return self
