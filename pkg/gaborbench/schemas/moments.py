import enum
from typing import Dict, Union

from pydantic import BaseModel, Field, model_validator


class Normalization(enum.Enum):
    RAW = "raw"
    NORMALIZED = "normalized"


class TraceMomentEstimate(BaseModel):
    """Monte-Carlo estimate of E[Tr H^m]; normalized_mean is (M/|Lambda|)^m times the mean."""

    M: int = Field(..., ge=1)
    lambda_size: int = Field(..., ge=1)
    kind: str
    m: int = Field(..., ge=1)
    samples: int = Field(..., ge=2)
    mean: float
    std_error: float = Field(..., ge=0.0)
    normalized_mean: float
    normalization: Normalization = Normalization.RAW

    @model_validator(mode="after")
    def check_normalized(self):
        scale = (self.M / self.lambda_size) ** self.m
        if abs(self.normalized_mean - scale * self.mean) > 1e-9 * max(1.0, abs(scale * self.mean)):
            raise ValueError("normalized_mean must equal (M/|Lambda|)^m * mean")
        return self

    @property
    def value(self) -> float:
        """The estimate in the requested normalization."""
        if self.normalization == Normalization.NORMALIZED:
            return self.normalized_mean
        return self.mean

    def csv_row(self) -> Dict[str, Union[int, float, str]]:
        return {column: getattr(self, column) for column in TRACE_MOMENT_COLUMNS}


TRACE_MOMENT_COLUMNS = ["M", "lambda_size", "kind", "m", "samples", "mean", "std_error", "normalized_mean"]
