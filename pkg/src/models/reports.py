"""Report models emitted by the command line and the HTTP service."""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.diagnostics import OptimalityReport
from src.models.pairwise import ConsistencyReport


class RankReport(BaseModel):
    """Result of ranking one matrix, in the order the fields are printed."""

    model_config = ConfigDict(frozen=True)

    method: str = Field(..., description="hre-geom, hre-arith, ev or gm")
    feasible: bool = Field(True, description="False only for an infeasible arithmetic solution")
    scale: str = Field("raw", description="Which vector 'priorities' holds: raw or normalized")
    priorities: Tuple[float, ...] = Field(..., description="The vector in the requested scale")
    raw: Tuple[float, ...] = Field(..., description="Priorities in natural units, reference values included")
    normalized: Optional[Tuple[float, ...]] = Field(None, description="Raw priorities rescaled to sum to 1")
    ranking: Tuple[int, ...] = Field(
        ..., description="1-based concepts by descending priority, ties by ascending index"
    )
    ranks: Tuple[int, ...] = Field(
        ..., description="1-based rank of each concept in input order; equal priorities share a rank"
    )
    labels: Optional[Tuple[str, ...]] = Field(None, description="Concept names when the input carried them")
    known: Optional[Dict[int, float]] = Field(None, description="Reference values, 1-based index -> priority")
    base: Optional[float] = Field(None, description="Logarithm base of the intermediate values")
    b: Optional[Tuple[float, ...]] = Field(None, description="Right-hand side of the solved system")
    log_solution: Optional[Tuple[float, ...]] = Field(
        None, description="Logarithms of the unknown priorities in the given base"
    )
    consistency: ConsistencyReport
    optimality: Optional[OptimalityReport] = None
    warnings: List[str] = Field(default_factory=list)
    input_digest: str = Field(..., description="sha256 of the canonical inputs")

    @model_validator(mode="after")
    def _check_ranking(self) -> "RankReport":
        if sorted(self.ranking) != list(range(1, len(self.raw) + 1)):
            raise ValueError("ranking must be a permutation of 1..n")
        if len(self.ranks) != len(self.raw):
            raise ValueError("ranks must hold one entry per concept")
        if [self.ranks[i - 1] for i in self.ranking] != sorted(self.ranks):
            raise ValueError("ranking must list concepts in order of rank")
        if self.feasible and any(not v > 0 for v in self.raw):
            raise ValueError("a feasible report must carry strictly positive priorities")
        return self
