import logging
from typing import Optional

import numpy as np

from config import EIGEN_SOLVER, THREADS
from gaborbench.sampling import make_rng, require_seed
from gaborbench.utils.exceptions import InvalidParameter

logger = logging.getLogger(__name__)


def get_rng(seed: Optional[int], *spawn_key: int, what: str = "this command") -> np.random.Generator:
    """Seeded generator for a command; the spawn key separates independent draws (per M, per trial)."""
    return make_rng(require_seed(seed, what), *spawn_key)


def resolve_threads(threads: Optional[int]) -> int:
    resolved = THREADS if threads is None else threads
    if resolved < 1:
        raise InvalidParameter(f"Thread count must be positive, got {resolved}")
    return resolved


def resolve_solver(solver: Optional[str]) -> str:
    return solver or EIGEN_SOLVER
