"""Request bodies accepted by the HTTP service."""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from src.models.pairwise import PcMatrix, ReferenceAssignment


class MatrixRequest(BaseModel):
    """A judgment matrix given as rows of positive numbers."""

    matrix: List[List[float]] = Field(..., description="Row-major judgments m_ij")
    labels: Optional[List[str]] = Field(None, description="Optional concept names")

    def to_matrix(self) -> PcMatrix:
        return PcMatrix(
            entries=tuple(tuple(row) for row in self.matrix),
            labels=tuple(self.labels) if self.labels is not None else None,
        )


def _distinct_indices(known: Any) -> Any:
    if isinstance(known, dict):
        seen = set()
        for key in known:
            try:
                index = int(key)
            except (TypeError, ValueError):
                continue
            if index in seen:
                raise ValueError(f"concept {index} is given more than once")
            seen.add(index)
    return known


class RankRequest(MatrixRequest):
    """Parameters of a ranking."""

    known: Optional[Dict[int, float]] = Field(
        None, description="1-based concept index -> known priority", examples=[{"2": 5, "3": 7}]
    )
    method: Optional[str] = Field(None, description="hre-geom (default), hre-arith, ev or gm")
    base: Optional[float] = Field(None, gt=1, description="Logarithm base of intermediate values")
    normalize: bool = Field(False, description="Report priorities summing to 1")

    @field_validator("known", mode="before")
    @classmethod
    def _check_known(cls, known: Any) -> Any:
        return _distinct_indices(known)

    def to_reference(self) -> Optional[ReferenceAssignment]:
        return ReferenceAssignment(known=self.known) if self.known is not None else None


class DiagnoseRequest(MatrixRequest):
    """Optimality diagnostics for a provided or freshly computed solution."""

    known: Optional[Dict[int, float]] = Field(None, description="1-based concept index -> known priority")
    solution: Optional[List[float]] = Field(None, description="Priorities to diagnose")
    base: Optional[float] = Field(None, gt=1)

    @field_validator("known", mode="before")
    @classmethod
    def _check_known(cls, known: Any) -> Any:
        return _distinct_indices(known)

    def to_reference(self) -> Optional[ReferenceAssignment]:
        return ReferenceAssignment(known=self.known) if self.known is not None else None
