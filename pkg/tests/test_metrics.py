import itertools
import math

import numpy as np
import pytest

from gaborbench.gabor import (
    alltop_window,
    concat,
    explicit_set,
    full_set,
    make_window,
    product_set,
    standard_basis_frame,
    synthesize,
)
from gaborbench.linalg import trace_power
from gaborbench.metrics import (
    coherence,
    cond_from_delta,
    frame_bounds,
    frame_operator,
    frame_potential,
    h_matrix,
    is_tight,
    lower_bound_welch,
    reconstruction_error_bound,
    regular_set_bounds,
    trace_delta,
)
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import WindowKind
from gaborbench.utils.exceptions import NotUnitNorm


def unit_norm_frame(rng, M, N):
    x = rng.standard_normal((M, N)) + 1j * rng.standard_normal((M, N))
    return SynthesisMatrix(matrix=x / np.linalg.norm(x, axis=0, keepdims=True))


def test_identity_bounds():
    report = frame_bounds(standard_basis_frame(4))
    assert report.lower_bound == pytest.approx(1.0)
    assert report.upper_bound == pytest.approx(1.0)
    assert report.cond == pytest.approx(1.0)
    assert report.is_frame and is_tight(report)
    assert report.csv_row() == {"M": 4, "N": 4, "A": report.lower_bound, "B": report.upper_bound,
                                "cond": report.cond, "delta": report.delta}


def test_steinhaus_time_product_bounds():
    g = make_window(WindowKind.STEINHAUS, 11, seed=3)
    report = frame_bounds(synthesize(g, product_set([1, 4, 9], 11)))
    assert report.lower_bound == pytest.approx(3.0, abs=1e-10)
    assert report.upper_bound == pytest.approx(3.0, abs=1e-10)
    assert report.delta == pytest.approx(0.0, abs=1e-10)


def test_non_spanning_frame_reported():
    report = frame_bounds(SynthesisMatrix(matrix=np.eye(3)[:, :2]))
    assert not report.is_frame
    assert math.isinf(report.cond)
    assert math.isinf(reconstruction_error_bound(SynthesisMatrix(matrix=np.eye(3)[:, :2])))


@pytest.mark.parametrize("seed", range(5))
def test_too_few_points_report_zero_lower_bound(seed):
    g = make_window(WindowKind.GAUSSIAN, 4, seed=seed)
    report = frame_bounds(synthesize(g, explicit_set(4, [(0, 0), (1, 2), (3, 1)])))
    assert not report.is_frame
    assert report.lower_bound == 0.0
    assert math.copysign(1.0, report.lower_bound) == 1.0
    assert math.isinf(report.cond)


def test_reconstruction_error_bound():
    assert reconstruction_error_bound(SynthesisMatrix(matrix=2 * np.eye(3))) == pytest.approx(0.25)


@pytest.mark.parametrize("seed", range(3))
def test_regular_set_bounds_match_spectrum(seed):
    M = 12
    g = make_window(WindowKind.GAUSSIAN, M, seed=seed)
    F = [0, 3, 4]
    A, B = regular_set_bounds(g, F)
    report = frame_bounds(synthesize(g, product_set(F, M)), solver="lapack")
    assert report.lower_bound == pytest.approx(A, rel=1e-9)
    assert report.upper_bound == pytest.approx(B, rel=1e-9)


def test_regular_set_operator_is_diagonal():
    M = 10
    g = make_window(WindowKind.SPHERE, M, seed=8)
    S = frame_operator(synthesize(g, product_set([2, 5], M)))
    off = S - np.diag(np.diag(S))
    assert np.sum(np.abs(off)) <= 1e-9 * M


def test_coherence():
    assert coherence(standard_basis_frame(5)) == 0.0
    assert coherence(synthesize(alltop_window(5), full_set(5))) == pytest.approx(1 / math.sqrt(5), abs=1e-12)
    single = SynthesisMatrix(matrix=np.ones((4, 1)) / 2)
    assert coherence(single) == 0.0
    with pytest.raises(NotUnitNorm):
        coherence(SynthesisMatrix(matrix=2 * np.eye(3)))


def test_frame_potential_examples():
    assert frame_potential(standard_basis_frame(6)) == pytest.approx(6.0)
    g = make_window(WindowKind.STEINHAUS, 5, seed=1)
    assert frame_potential(synthesize(g, product_set([0, 3], 5))) == pytest.approx(20.0, abs=1e-8)
    assert frame_potential(synthesize(alltop_window(5), full_set(5))) == pytest.approx(125.0, abs=1e-8)


def test_frame_potential_welch_inequality():
    rng = np.random.default_rng(21)
    for _ in range(100):
        M = int(rng.integers(2, 7))
        N = int(rng.integers(M, 3 * M))
        phi = unit_norm_frame(rng, M, N)
        assert frame_potential(phi) >= N * N / M - 1e-8


def test_h_matrix_identities():
    assert np.max(np.abs(h_matrix(standard_basis_frame(4)))) <= 1e-12
    rng = np.random.default_rng(2)
    phi = unit_norm_frame(rng, 4, 7)
    H = h_matrix(phi)
    np.testing.assert_allclose(H, H.conj().T, atol=1e-13)
    assert np.trace(H).real == pytest.approx(0.0, abs=1e-12)
    assert trace_power(H, 2) == pytest.approx(frame_potential(phi) - 49 / 4, abs=1e-9)


def test_lower_bound_welch_examples():
    M = 4
    assert lower_bound_welch(standard_basis_frame(M)) == pytest.approx(1 - (M - 1) / (2 * M))
    tight = SynthesisMatrix(matrix=np.concatenate([np.eye(M), np.eye(M)], axis=1))
    assert lower_bound_welch(tight) == pytest.approx(2 - (M - 1) / (2 * M))
    with pytest.raises(NotUnitNorm):
        lower_bound_welch(SynthesisMatrix(matrix=3 * np.eye(2)))


def test_lower_bound_welch_never_exceeds_true_bound():
    rng = np.random.default_rng(5)
    for _ in range(500):
        M = int(rng.integers(2, 9))
        N = int(rng.integers(M, 21))
        phi = unit_norm_frame(rng, M, N)
        assert frame_bounds(phi, solver="lapack").lower_bound >= lower_bound_welch(phi) - 1e-9


def test_eigenvalue_sum_matches_column_energy():
    rng = np.random.default_rng(6)
    x = rng.standard_normal((5, 9)) + 1j * rng.standard_normal((5, 9))
    phi = SynthesisMatrix(matrix=x)
    report = frame_bounds(phi)
    assert sum(report.eigenvalues) == pytest.approx(np.sum(np.abs(x) ** 2), rel=1e-8)


def test_bounds_monotone_under_column_removal():
    rng = np.random.default_rng(9)
    phi = unit_norm_frame(rng, 3, 7)
    full = frame_bounds(phi)
    for r in range(1, 4):
        for removed in itertools.combinations(range(7), r):
            kept = [j for j in range(7) if j not in removed]
            part = frame_bounds(SynthesisMatrix(matrix=phi.matrix[:, kept]))
            assert part.upper_bound <= full.upper_bound + 1e-10
            assert part.lower_bound <= full.lower_bound + 1e-10


@pytest.mark.parametrize("m", [1, 2, 3])
def test_trace_delta_dominates_delta(m):
    rng = np.random.default_rng(m)
    phi = unit_norm_frame(rng, 5, 12)
    assert trace_delta(phi, m) >= frame_bounds(phi).delta - 1e-12


def test_cond_from_delta():
    assert cond_from_delta(0.0) == 1.0
    assert cond_from_delta(0.5) == pytest.approx(math.sqrt(3.0))
    assert math.isinf(cond_from_delta(1.0))


def harmonic_frame(M, N):
    """First M rows of the N-point DFT, scaled to unit-norm columns; tight with A = N/M."""
    j = np.arange(M)[:, None]
    k = np.arange(N)[None, :]
    return SynthesisMatrix(matrix=np.exp(2j * np.pi * j * k / N) / np.sqrt(M))


def test_steinhaus_time_products_are_tight():
    rng = np.random.default_rng(31)
    for case in range(100):
        M = int(rng.integers(2, 65))
        F = rng.choice(M, size=int(rng.integers(1, M + 1)), replace=False)
        g = make_window(WindowKind.STEINHAUS, M, seed=case)
        report = frame_bounds(synthesize(g, product_set(F, M)))
        assert report.lower_bound == pytest.approx(len(F), abs=1e-9)
        assert report.upper_bound == pytest.approx(len(F), abs=1e-9)


def test_regular_set_bounds_random_cases():
    rng = np.random.default_rng(32)
    kinds = [WindowKind.GAUSSIAN, WindowKind.SPHERE, WindowKind.STEINHAUS]
    for case in range(100):
        M = int(rng.integers(2, 33))
        F = rng.choice(M, size=int(rng.integers(1, M + 1)), replace=False)
        g = make_window(kinds[case % 3], M, seed=1000 + case)
        A, B = regular_set_bounds(g, F)
        report = frame_bounds(synthesize(g, product_set(F, M)))
        assert report.lower_bound == pytest.approx(A, abs=1e-9 * max(1.0, B))
        assert report.upper_bound == pytest.approx(B, abs=1e-9 * max(1.0, B))


def test_welch_equality_exactly_for_tight_frames():
    rng = np.random.default_rng(33)
    frames = [unit_norm_frame(rng, int(M), int(N)) for M, N in zip(rng.integers(2, 9, 60), rng.integers(9, 30, 60))]
    frames += [harmonic_frame(int(M), int(N)) for M, N in zip(rng.integers(2, 9, 30), rng.integers(9, 30, 30))]
    frames += [synthesize(alltop_window(M), full_set(M)) for M in (5, 7, 11)]
    frames += [concat(standard_basis_frame(4), standard_basis_frame(4))]
    tight_count = 0
    for phi in frames:
        gap = frame_potential(phi) - phi.N ** 2 / phi.M
        tight = frame_bounds(phi, solver="lapack").delta <= 1e-6
        assert gap >= -1e-8
        assert (abs(gap) <= 1e-8) == tight
        tight_count += tight
    assert tight_count == 34
