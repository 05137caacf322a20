from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from gaborbench.utils.exceptions import InvalidParameter


@dataclass(frozen=True)
class SubsetOfZM:
    M: int
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.M < 1:
            raise InvalidParameter(f"M must be positive, got {self.M}")
        members = np.array(self.members, dtype=np.int64).reshape(-1)
        if members.size and (members.min() < 0 or members.max() >= self.M):
            raise InvalidParameter(f"Subset members must lie in [0, {self.M})")
        unique = np.unique(members)
        if unique.shape[0] != members.shape[0]:
            raise InvalidParameter("Subset members must be distinct")
        unique.setflags(write=False)
        object.__setattr__(self, "members", unique)

    @classmethod
    def of(cls, M: int, members: Iterable[int]) -> "SubsetOfZM":
        return cls(M=M, members=np.array(list(members), dtype=np.int64))

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "SubsetOfZM":
        mask = np.asarray(mask, dtype=bool)
        return cls(M=mask.shape[0], members=np.flatnonzero(mask))

    def __len__(self) -> int:
        return int(self.members.shape[0])

    def translate(self, a: int) -> "SubsetOfZM":
        return SubsetOfZM(self.M, (self.members + a) % self.M)

    def dilate(self, u: int) -> "SubsetOfZM":
        return SubsetOfZM(self.M, (self.members * u) % self.M)

    def complement(self) -> "SubsetOfZM":
        return SubsetOfZM(self.M, np.setdiff1d(np.arange(self.M), self.members))
