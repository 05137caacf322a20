from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from gaborbench.utils.exceptions import InvalidParameter


@dataclass(frozen=True)
class FrameSet:
    """A subset of Z_M x Z_M, kept as an (N, 2) array sorted lexicographically in (k, l)."""

    dim: int
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidParameter(f"Frame set dimension must be positive, got {self.dim}")
        points = np.array(self.points, dtype=np.int64).reshape(-1, 2)
        if points.size and (points.min() < 0 or points.max() >= self.dim):
            raise InvalidParameter(f"Frame set points must lie in [0, {self.dim})")
        keys = points[:, 0] * self.dim + points[:, 1]
        unique = np.unique(keys)
        if unique.shape[0] != keys.shape[0]:
            raise InvalidParameter("Frame set has duplicate points")
        points = np.stack([unique // self.dim, unique % self.dim], axis=1)
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[Tuple[int, int]]) -> "FrameSet":
        return cls(dim=dim, points=np.array(list(pairs), dtype=np.int64).reshape(-1, 2))

    def cardinality(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.cardinality()

    def pairs(self) -> List[Tuple[int, int]]:
        return [(int(k), int(l)) for k, l in self.points]

    def fibers(self) -> List[np.ndarray]:
        """A_k = {l : (k, l) in the set} for every k in Z_M."""
        return [self.points[self.points[:, 0] == k, 1] for k in range(self.dim)]

    def fiber_sizes(self) -> np.ndarray:
        return np.bincount(self.points[:, 0], minlength=self.dim)
