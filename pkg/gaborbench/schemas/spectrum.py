from typing import Dict, List

from pydantic import BaseModel, Field, field_validator


class SpectrumReport(BaseModel):
    M: int = Field(..., ge=1)
    N: int = Field(..., ge=1)
    eigenvalues: List[float]
    lower_bound: float
    upper_bound: float
    cond: float
    delta: float
    is_frame: bool

    @field_validator("eigenvalues")
    @classmethod
    def eigenvalues_ascending(cls, v: List[float]) -> List[float]:
        if any(b < a for a, b in zip(v, v[1:])):
            raise ValueError("eigenvalues must be sorted ascending")
        return v

    def csv_row(self) -> Dict[str, float]:
        return {
            "M": self.M,
            "N": self.N,
            "A": self.lower_bound,
            "B": self.upper_bound,
            "cond": self.cond,
            "delta": self.delta,
        }


SPECTRUM_COLUMNS = ["M", "N", "A", "B", "cond", "delta"]
