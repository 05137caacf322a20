import enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from gaborbench.models.window import WindowKind


class Command(enum.Enum):
    FRAME_BOUNDS = "frame-bounds"
    SV_DISTRIBUTION = "sv-distribution"
    TRACE_HEATMAP = "trace-heatmap"
    TRACE_MOMENTS = "trace-moments"
    MUB_TABLE = "mub-table"
    DELTA_P = "delta-p"
    PROB_CHECKS = "prob-checks"


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


class Lemma(enum.Enum):
    HOEFFDING = "hoeffding"
    GAUSSIAN_NORM = "gaussian-norm"
    ROOTS_OF_UNITY = "roots-of-unity"
    STRUCTURED_GAUSSIAN = "structured-gaussian"
    STRUCTURED_SPHERE = "structured-sphere"
    STEINHAUS_UPPER = "steinhaus-upper"
    RANDOM_LAMBDA = "random-lambda"
    FOURIER_BIAS = "fourier-bias"


# Commands that always draw random numbers
RANDOMIZED_COMMANDS = {
    Command.SV_DISTRIBUTION,
    Command.TRACE_HEATMAP,
    Command.TRACE_MOMENTS,
    Command.DELTA_P,
    Command.PROB_CHECKS,
}


class ExperimentConfig(BaseModel):
    """Validated command configuration; built from the parsed CLI arguments."""

    command: Command
    M: Optional[int] = Field(None, ge=1)
    M_range: Optional[List[int]] = None
    window: Optional[WindowKind] = None
    lambda_spec: Optional[str] = None
    p: Optional[float] = Field(None, ge=0.0, lt=1.0)
    p_list: Optional[List[float]] = None
    m: Optional[int] = Field(None, ge=1)
    orders: Optional[List[int]] = None
    samples: Optional[int] = Field(None, ge=1)
    trials: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0)
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    threads: int = Field(1, ge=1)
    full_precision: bool = False
    C: Optional[float] = Field(None, gt=0.0)
    C_list: Optional[List[float]] = None
    F_size: Optional[int] = Field(None, ge=1)
    tau: Optional[float] = Field(None, gt=0.0, le=1.0)
    t: Optional[float] = Field(None, gt=0.0)
    eps: Optional[float] = Field(None, gt=0.0, le=1.0)
    delta: Optional[float] = Field(None, gt=0.0)
    lam: Optional[float] = Field(None, gt=0.0)
    threshold: Optional[float] = Field(None, gt=0.0)
    bins: int = Field(50, ge=1)
    lemma: Optional[Lemma] = None
    solver: Optional[str] = None

    @field_validator("M_range")
    @classmethod
    def dims_positive(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and (not v or min(v) < 1):
            raise ValueError("M-range must list positive dimensions")
        return v

    @field_validator("p_list")
    @classmethod
    def rates_in_range(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and (not v or any(not 0.0 <= p < 1.0 for p in v)):
            raise ValueError("every erasure rate must lie in [0, 1)")
        return v

    @field_validator("orders")
    @classmethod
    def orders_positive(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and (not v or min(v) < 1):
            raise ValueError("moment orders must be positive")
        return v

    @field_validator("C_list")
    @classmethod
    def constants_positive(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and (not v or min(v) <= 0.0):
            raise ValueError("C-list values must be positive")
        return v

    @field_validator("solver")
    @classmethod
    def known_solver(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in ("auto", "jacobi", "lapack"):
            raise ValueError("solver must be one of auto, jacobi, lapack")
        return v

    @model_validator(mode="after")
    def seed_when_random(self):
        random_window = self.window is not None and self.window.is_random
        random_lambda = self.lambda_spec is not None and self.lambda_spec.startswith("bernoulli")
        needs_seed = self.command in RANDOMIZED_COMMANDS or random_window or random_lambda
        if needs_seed and self.seed is None:
            raise ValueError(f"--seed is required for {self.command.value} with random inputs")
        if self.command == Command.PROB_CHECKS and self.lemma is None:
            raise ValueError("--lemma is required for prob-checks")
        return self

    def dims(self, default: List[int]) -> List[int]:
        if self.M_range is not None:
            return self.M_range
        if self.M is not None:
            return [self.M]
        return default
