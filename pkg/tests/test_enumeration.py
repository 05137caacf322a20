import itertools
from math import comb

import numpy as np
import pytest

from gaborbench.enumeration import (
    chunk_ranges,
    combinations_chunk,
    rank_colex,
    sample_subsets,
    unrank_colex,
)
from gaborbench.sampling import make_rng
from gaborbench.utils.exceptions import InvalidParameter


@pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (9, 9), (10, 1), (25, 3)])
def test_unrank_follows_colex_order(n, k):
    expected = sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1])
    got = unrank_colex(range(comb(n, k)), n, k)
    assert [tuple(row) for row in got] == expected


def test_rank_inverts_unrank():
    rows = unrank_colex([0, 17, 1000, comb(25, 20) - 1], 25, 20)
    assert [rank_colex(row) for row in rows] == [0, 17, 1000, comb(25, 20) - 1]
    assert tuple(rows[0]) == tuple(range(20))
    assert tuple(rows[-1]) == tuple(range(5, 25))


def test_large_ranks_exact():
    n, k = 60, 30
    last = comb(n, k) - 1
    assert last > 2 ** 32
    row = unrank_colex([last], n, k)[0]
    assert tuple(row) == tuple(range(30, 60))
    assert rank_colex(row) == last


def test_unrank_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        unrank_colex([10], 5, 2)
    with pytest.raises(InvalidParameter):
        unrank_colex([0], 3, 4)
    assert unrank_colex([0], 4, 0).shape == (1, 0)


def test_chunks_cover_range():
    assert chunk_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert chunk_ranges(0, 4) == []
    with pytest.raises(InvalidParameter):
        chunk_ranges(10, 0)
    pieces = [combinations_chunk(8, 3, a, b) for a, b in chunk_ranges(comb(8, 3), 13)]
    np.testing.assert_array_equal(np.concatenate(pieces), unrank_colex(range(comb(8, 3)), 8, 3))


def test_sample_subsets():
    subsets = sample_subsets(10, 4, 5000, make_rng(3))
    assert subsets.shape == (5000, 4)
    assert np.all(np.diff(subsets, axis=1) > 0)
    # Each element is included with probability 2/5
    counts = np.bincount(subsets.ravel(), minlength=10) / 5000
    np.testing.assert_allclose(counts, 0.4, atol=0.03)
    np.testing.assert_array_equal(subsets, sample_subsets(10, 4, 5000, make_rng(3)))
    with pytest.raises(InvalidParameter):
        sample_subsets(3, 4, 1, make_rng(0))
