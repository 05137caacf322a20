from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from gaborbench.utils.exceptions import InvalidParameter


@dataclass(frozen=True)
class SynthesisMatrix:
    """M x N matrix with frame vectors as columns; labels hold (k, l) for Gabor columns."""

    matrix: np.ndarray = field(repr=False)
    column_labels: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] < 1:
            raise InvalidParameter(f"Synthesis matrix must be 2-D with M >= 1 rows, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise InvalidParameter("Synthesis matrix has non-finite entries")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        if self.column_labels is not None:
            labels = np.array(self.column_labels, dtype=np.int64).reshape(-1, 2)
            if labels.shape[0] != matrix.shape[1]:
                raise InvalidParameter("Column labels do not match the number of columns")
            labels.setflags(write=False)
            object.__setattr__(self, "column_labels", labels)

    @property
    def M(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def N(self) -> int:
        return int(self.matrix.shape[1])

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)
