from pydantic import BaseModel, Field, model_validator


class TailCheckReport(BaseModel):
    lemma: str
    M: int = Field(..., ge=1)
    params: str = ""
    trials: int = Field(..., ge=1)
    violations: int = Field(..., ge=0)
    empirical_rate: float = Field(..., ge=0.0, le=1.0)
    theoretical_bound: float

    @model_validator(mode="after")
    def rate_matches_counts(self):
        if self.violations > self.trials:
            raise ValueError("violations cannot exceed trials")
        if abs(self.empirical_rate - self.violations / self.trials) > 1e-12:
            raise ValueError("empirical_rate must equal violations / trials")
        return self


TAIL_COLUMNS = ["lemma", "M", "params", "trials", "violations", "empirical_rate", "theoretical_bound"]
