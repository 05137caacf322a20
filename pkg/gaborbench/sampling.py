"""Seeded random streams.

Every random draw in the package comes from a PCG64 generator built from a
``SeedSequence``. Work split into blocks derives one substream per block index,
so results depend on the seed and the block layout only, never on how many
workers processed the blocks.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, TypeVar

import numpy as np

from gaborbench.utils.exceptions import InvalidParameter

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class Block:
    index: int
    start: int
    count: int


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    if seed is None or seed < 0:
        raise InvalidParameter(f"Seed must be a non-negative integer, got {seed}")
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in spawn_key))
    return np.random.Generator(np.random.PCG64(sequence))


def substream(seed: int, block: int) -> np.random.Generator:
    return make_rng(seed, block)


def derive_seed(seed: int, *spawn_key: int) -> int:
    """A child root seed, for handing one experiment cell its own family of substreams."""
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in spawn_key))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def require_seed(seed: Optional[int], what: str) -> int:
    if seed is None:
        raise InvalidParameter(f"A seed is required for {what}")
    return seed


def split_blocks(total: int, block_size: int) -> List[Block]:
    if block_size < 1:
        raise InvalidParameter(f"Block size must be positive, got {block_size}")
    return [
        Block(index=i, start=start, count=min(block_size, total - start))
        for i, start in enumerate(range(0, total, block_size))
    ]


def run_blocks(
    fn: Callable[[np.random.Generator, Block], T],
    total: int,
    block_size: int,
    seed: int,
    threads: int = 1,
) -> List[T]:
    """
    Run `fn` over fixed-size blocks, each with its own substream.

    Args:
        fn: Called as fn(rng, block)
        total: Number of items (samples, trials) to cover
        block_size: Items per block; fixes the substream layout
        seed: Root seed
        threads: Worker count

    Returns:
        List[T]: Per-block results in block order
    """
    blocks = split_blocks(total, block_size)
    if threads <= 1 or len(blocks) <= 1:
        return [fn(substream(seed, b.index), b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(substream(seed, b.index), b), blocks))
