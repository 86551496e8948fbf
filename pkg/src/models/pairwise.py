"""Pydantic models for pairwise comparison matrices, reference sets and priorities."""
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from src.config.settings import settings


class PcMatrix(BaseModel):
    """An n x n matrix of strictly positive pairwise judgment ratios m_ij."""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[float, ...], ...] = Field(..., description="Row-major judgment ratios m_ij")
    labels: Optional[Tuple[str, ...]] = Field(
        None, description="Optional concept names; metadata only, never used in computation"
    )

    @field_validator("entries")
    @classmethod
    def _check_entries(cls, entries: Tuple[Tuple[float, ...], ...]) -> Tuple[Tuple[float, ...], ...]:
        n = len(entries)
        if n < 2:
            raise ValueError(f"a PC matrix needs at least 2 concepts, got {n}")
        for i, row in enumerate(entries, start=1):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            for j, value in enumerate(row, start=1):
                if not math.isfinite(value) or value <= 0:
                    raise ValueError(f"entry ({i}, {j}) must be finite and strictly positive, got {value!r}")
        tol = settings.diagonal_tolerance
        for i in range(n):
            if abs(entries[i][i] - 1.0) > tol:
                raise ValueError(f"diagonal entry ({i + 1}, {i + 1}) must equal 1, got {entries[i][i]!r}")
        return entries

    @model_validator(mode="after")
    def _check_labels(self) -> "PcMatrix":
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"expected {self.n} labels, got {len(self.labels)}")
        return self

    @property
    def n(self) -> int:
        """Number of compared concepts."""
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        """Return the judgments as a read-only float64 array."""
        array = np.array(self.entries, dtype=np.float64)
        array.setflags(write=False)
        return array

    @classmethod
    def from_array(cls, array, labels: Optional[Sequence[str]] = None) -> "PcMatrix":
        """Build a matrix from any 2-D array-like of positive numbers."""
        rows = tuple(tuple(float(x) for x in row) for row in np.asarray(array, dtype=np.float64))
        return cls(entries=rows, labels=tuple(labels) if labels is not None else None)


class ReferenceAssignment(BaseModel):
    """Known priorities of the reference concepts, keyed by 1-based concept index."""

    model_config = ConfigDict(frozen=True)

    known: Dict[int, float] = Field(..., description="1-based concept index -> known positive priority")

    @field_validator("known")
    @classmethod
    def _check_known(cls, known: Dict[int, float]) -> Dict[int, float]:
        if not known:
            raise ValueError("the reference set must contain at least one concept")
        for index, value in known.items():
            if index < 1:
                raise ValueError(f"concept index {index} is out of range; indices are 1-based")
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"known value for concept {index} must be finite and strictly positive, got {value!r}")
        return dict(sorted(known.items()))

    def scaled(self, factor: float) -> "ReferenceAssignment":
        """Return the assignment with every known value multiplied by *factor*."""
        return ReferenceAssignment(known={i: v * factor for i, v in self.known.items()})


class HreProblem(BaseModel):
    """A judgment matrix together with the reference assignment.

    Internally the unknown concepts are placed first (ascending index) and
    the known concepts after them; ``permutation`` maps internal positions to
    original 0-based positions and ``inverse_permutation`` maps back.
    """

    model_config = ConfigDict(frozen=True)

    matrix: PcMatrix = Field(..., description="The PC matrix M")
    reference: ReferenceAssignment = Field(..., description="Known priorities of the reference set")

    @model_validator(mode="after")
    def _check_reference(self) -> "HreProblem":
        n = self.matrix.n
        for index in self.reference.known:
            if index > n:
                raise ValueError(f"reference concept {index} is out of range for a {n}x{n} matrix")
        if len(self.reference.known) > n - 1:
            raise ValueError("at least one concept must be unknown")
        return self

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def known_positions(self) -> Tuple[int, ...]:
        """0-based positions of the reference concepts, ascending."""
        return tuple(i - 1 for i in self.reference.known)

    @property
    def unknown_positions(self) -> Tuple[int, ...]:
        """0-based positions of the concepts to estimate, ascending."""
        known = set(self.known_positions)
        return tuple(i for i in range(self.n) if i not in known)

    @property
    def k(self) -> int:
        """Number of unknown concepts."""
        return self.n - len(self.reference.known)

    @property
    def permutation(self) -> Tuple[int, ...]:
        return self.unknown_positions + self.known_positions

    @property
    def inverse_permutation(self) -> Tuple[int, ...]:
        inverse = [0] * self.n
        for internal, original in enumerate(self.permutation):
            inverse[original] = internal
        return tuple(inverse)

    def known_values(self) -> np.ndarray:
        """Known priorities ordered as ``known_positions``."""
        return np.array([self.reference.known[i + 1] for i in self.known_positions], dtype=np.float64)


class PriorityVector(BaseModel):
    """A ranking function: one strictly positive value per concept, in original order."""

    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...] = Field(..., description="Raw priorities mu(c_1)..mu(c_n)")
    method: Optional[str] = Field(None, description="Method that produced the vector")
    warnings: Tuple[str, ...] = Field(default=(), description="Non-fatal issues met while computing")

    @field_validator("values")
    @classmethod
    def _check_values(cls, values: Tuple[float, ...]) -> Tuple[float, ...]:
        if not values:
            raise ValueError("a priority vector needs at least one value")
        for i, value in enumerate(values, start=1):
            if not math.isfinite(value) or value <= 0:
                raise ValueError(f"priority of concept {i} must be finite and strictly positive, got {value!r}")
        return values

    @computed_field
    @property
    def normalized(self) -> Tuple[float, ...]:
        """The priorities rescaled to sum to 1."""
        total = math.fsum(self.values)
        return tuple(v / total for v in self.values)

    @property
    def n(self) -> int:
        return len(self.values)

    def to_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


class ReciprocityViolation(BaseModel):
    """A pair (i, j), i < j, with m_ij * m_ji away from 1."""

    model_config = ConfigDict(frozen=True)

    i: int = Field(..., description="1-based row index")
    j: int = Field(..., description="1-based column index")
    product: float = Field(..., description="m_ij * m_ji")


class ConsistencyReport(BaseModel):
    """Reciprocity, consistency and Koczkodaj inconsistency of a matrix."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Number of concepts")
    reciprocal: bool = Field(..., description="Whether m_ij * m_ji = 1 for all pairs within tolerance")
    violations: List[ReciprocityViolation] = Field(
        default_factory=list, description="Pairs breaking reciprocity"
    )
    consistent: bool = Field(..., description="Whether m_ij * m_jk * m_ki = 1 for all triples within tolerance")
    koczkodaj: Optional[float] = Field(
        None, ge=0, description="Koczkodaj index; absent when n <= 2 or the matrix is not reciprocal"
    )
    worst_triad: Optional[Tuple[int, int, int]] = Field(
        None, description="1-based concepts of the triple attaining the index"
    )

    @model_validator(mode="after")
    def _check_flags(self) -> "ConsistencyReport":
        if self.consistent and not self.reciprocal:
            raise ValueError("a consistent matrix is necessarily reciprocal")
        return self
