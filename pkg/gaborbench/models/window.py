import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from gaborbench.utils.exceptions import DimensionMismatch, InvalidParameter


class WindowKind(enum.Enum):
    STEINHAUS = "steinhaus"
    GAUSSIAN = "gaussian"
    SPHERE = "sphere"
    ALLTOP = "alltop"
    CUSTOM = "custom"

    @property
    def is_random(self) -> bool:
        return self in (WindowKind.STEINHAUS, WindowKind.GAUSSIAN, WindowKind.SPHERE)


@dataclass(frozen=True)
class Window:
    dim: int
    values: np.ndarray = field(repr=False)
    kind: WindowKind = WindowKind.CUSTOM
    seed: Optional[int] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape[0] != self.dim:
            raise DimensionMismatch(self.dim, values.shape[0])
        if not np.all(np.isfinite(values)):
            raise InvalidParameter("Window has non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.values))
