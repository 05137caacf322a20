"""Colexicographic combination ranking, chunking and uniform subset sampling."""
from math import comb
from typing import List, Tuple

import numpy as np

from gaborbench.utils.exceptions import InvalidParameter


def _binomial_columns(n: int, k: int, cap: int) -> np.ndarray:
    """table[i - 1, c] = min(C(c, i), cap) for i = 1..k and c = 0..n-1."""
    table = np.empty((k, n), dtype=np.int64)
    for i in range(1, k + 1):
        table[i - 1] = [min(comb(c, i), cap) for c in range(n)]
    return table


def unrank_colex(ranks, n: int, k: int) -> np.ndarray:
    """
    Combinations of {0..n-1} of size k at the given colex ranks.

    The rank of c_1 < ... < c_k is sum_i C(c_i, i); unranking picks, from the
    top position down, the largest c with C(c, i) <= remaining rank.

    Returns:
        np.ndarray: (len(ranks), k) array, each row ascending
    """
    if not 0 <= k <= n:
        raise InvalidParameter(f"Need 0 <= k <= n, got n={n}, k={k}")
    ranks = np.asarray(ranks, dtype=np.int64).reshape(-1)
    total = comb(n, k)
    if ranks.size and (ranks.min() < 0 or ranks.max() >= total):
        raise InvalidParameter(f"Colex ranks must lie in [0, {total})")
    out = np.empty((ranks.size, k), dtype=np.int64)
    if k == 0:
        return out
    # Saturating at total keeps searchsorted exact since every rank is below it
    table = _binomial_columns(n, k, total)
    remaining = ranks.copy()
    for i in range(k, 0, -1):
        column = table[i - 1]
        c = np.searchsorted(column, remaining, side="right") - 1
        out[:, i - 1] = c
        remaining -= column[c]
    return out


def rank_colex(combination) -> int:
    return sum(comb(int(c), i + 1) for i, c in enumerate(sorted(combination)))


def chunk_ranges(total: int, chunk_size: int) -> List[Tuple[int, int]]:
    if chunk_size < 1:
        raise InvalidParameter(f"Chunk size must be positive, got {chunk_size}")
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def combinations_chunk(n: int, k: int, start: int, stop: int) -> np.ndarray:
    return unrank_colex(np.arange(start, stop, dtype=np.int64), n, k)


def sample_subsets(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` uniform k-subsets of {0..n-1}, rows ascending."""
    if not 1 <= k <= n:
        raise InvalidParameter(f"Need 1 <= k <= n, got n={n}, k={k}")
    keys = rng.random((count, n))
    return np.sort(np.argsort(keys, axis=1)[:, :k], axis=1)
