from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HermitianEigenResult:
    eigenvalues: np.ndarray  # ascending, real
    residual: float  # max off-diagonal magnitude at convergence
    sweeps: int = 0
