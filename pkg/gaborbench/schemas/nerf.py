from typing import List

from pydantic import BaseModel, Field, field_validator


class NerfRow(BaseModel):
    """One erasure rate of the MUB table; infinite cells are float('inf')."""

    p: float = Field(..., ge=0.0, lt=1.0)
    J: int = Field(..., ge=1)
    est_trace_m1: float
    est_trace_m2: float
    est_theoretical: float
    worst_cond: float

    @field_validator("worst_cond")
    @classmethod
    def cond_at_least_one(cls, v: float) -> float:
        if v < 1.0 - 1e-9:
            raise ValueError("condition number must be >= 1")
        return v


NERF_COLUMNS = ["p", "J", "est_trace_m1", "est_trace_m2", "est_theoretical", "worst_cond"]


class MubProfile(BaseModel):
    m: int = Field(..., ge=1)
    M: int = Field(..., ge=1)
    basis_assignment: List[int]
    alpha: float = Field(..., gt=0.0)
    coherence: float = Field(0.0, ge=0.0)

    @field_validator("basis_assignment")
    @classmethod
    def assignment_nonempty(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("basis assignment cannot be empty")
        return v
