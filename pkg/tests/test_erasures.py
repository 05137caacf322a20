import math

import numpy as np
import pytest

from gaborbench.erasures import (
    EXHAUSTIVE,
    SAMPLE,
    TABLE_P_LIST,
    alltop_mub_profile,
    ambiguity_sequence,
    balanced_partition,
    delta_p,
    enumerate_worst_cond,
    gabor_nerf_bound,
    gabor_nerf_lower_bound,
    mub_nerf_bound,
    mub_table,
    mub_trace_m1_via_partitions,
    retained_count,
    scan_subframes,
    trace_cond_estimate,
    verify_mub,
)
from gaborbench.gabor import (
    alltop_window,
    concat,
    custom_window,
    explicit_set,
    full_set,
    make_window,
    product_set,
    standard_basis_frame,
    synthesize,
)
from gaborbench.metrics import cond_from_delta, frame_bounds, regular_set_bounds
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import WindowKind
from gaborbench.utils.exceptions import (
    CoherenceExceeded,
    InvalidParameter,
    NotOrthonormalBasis,
    NotUnitNorm,
    SubsetTooLarge,
)

INF = math.inf

# p -> (trace estimate m=1, trace estimate m=2, theoretical bound, worst condition number)
ALLTOP_5_TABLE = {
    0.0: (1.0, 1.0, 1.0, 1.0),
    0.04: (1.207488, 1.184004, 1.230022, 1.118034),
    0.08: (1.326102, 1.265527, 1.355143, 1.186316),
    0.12: (1.444592, 1.363902, 1.473415, 1.268861),
    0.16: (1.576014, 1.458856, 1.596509, 1.35509),
    0.2: (1.732051, 1.578976, 1.732051, 1.451066),
    0.24: (1.861272, 1.673945, 1.888307, 1.535922),
    0.28: (2.027217, 1.787106, 2.076928, 1.615618),
    0.32: (2.252406, 1.938546, 2.317178, 1.728263),
    0.36: (2.584151, 2.122931, 2.645751, 1.877075),
    0.4: (3.146264, 2.35985, 3.146264, 2.049199),
    0.44: (3.869975, 2.631544, 4.075101, 2.277497),
    0.48: (5.792162, 3.041437, 7.069653, 2.579654),
    0.52: (INF, 3.823597, INF, 2.884371),
    0.56: (INF, 6.345638, INF, 3.517504),
    0.6: (INF, INF, INF, 3.891432),
    0.64: (INF, INF, INF, 4.703299),
    0.68: (INF, INF, INF, 6.167132),
}


def approx_or_inf(value, expected):
    if math.isinf(expected):
        return math.isinf(value)
    return value == pytest.approx(expected, abs=2e-6)


def test_mub_nerf_bound():
    assert mub_nerf_bound(0.0, 1.0) == 1.0
    assert mub_nerf_bound(0.2, 1.0) == pytest.approx(math.sqrt(3))
    assert mub_nerf_bound(0.04, 1.0) == pytest.approx(1.230022, abs=1e-6)
    assert math.isinf(mub_nerf_bound(0.5, 1.0))
    values = [mub_nerf_bound(p, 1.2) for p in TABLE_P_LIST[:12]]
    assert values == sorted(values)
    with pytest.raises(InvalidParameter):
        mub_nerf_bound(1.0, 1.0)
    with pytest.raises(InvalidParameter):
        mub_nerf_bound(0.1, 0.0)


@pytest.mark.parametrize("M", [5, 7, 11, 13])
def test_alltop_is_mub(M):
    phi, profile = alltop_mub_profile(M)
    assert profile.m == M
    assert profile.alpha == pytest.approx(1.0)
    assert profile.coherence == pytest.approx(1 / math.sqrt(M), abs=1e-10)
    assert profile.basis_assignment[:M] == [0] * M


def test_alltop_with_standard_basis():
    phi, profile = alltop_mub_profile(7, with_standard_basis=True)
    assert phi.N == 56
    assert profile.m == 8
    assert profile.alpha == pytest.approx(8 / 7)
    assert profile.basis_assignment[-7:] == [7] * 7


def test_verify_mub_rejects():
    identity = standard_basis_frame(3)
    with pytest.raises(InvalidParameter):
        verify_mub(identity, [0, 0])
    with pytest.raises(InvalidParameter):
        verify_mub(concat(identity, SynthesisMatrix(matrix=np.eye(3)[:, :2])), [0, 0, 0, 1, 1])
    with pytest.raises(NotOrthonormalBasis):
        verify_mub(SynthesisMatrix(matrix=2 * np.eye(3)), [0, 0, 0])
    with pytest.raises(CoherenceExceeded):
        verify_mub(concat(identity, identity), [0, 0, 0, 1, 1, 1])


def test_balanced_partition():
    assert balanced_partition(24, 5, 5) == [5, 5, 5, 5, 4]
    assert balanced_partition(13, 5, 5) == [3, 3, 3, 2, 2]
    assert sum(balanced_partition(17, 4, 6)) == 17
    with pytest.raises(InvalidParameter):
        balanced_partition(26, 5, 5)


def test_partition_estimate_matches_table():
    _, profile = alltop_mub_profile(5)
    for p in (0.04, 0.08, 0.12, 0.48):
        J = round((1 - p) * 25)
        assert mub_trace_m1_via_partitions(profile, J) == pytest.approx(ALLTOP_5_TABLE[p][0], abs=2e-6)
    assert math.isinf(mub_trace_m1_via_partitions(profile, 12))


def test_full_frame_is_perfectly_conditioned():
    phi, _ = alltop_mub_profile(5)
    cond, argmax = enumerate_worst_cond(phi, 25)
    assert cond == pytest.approx(1.0, abs=1e-10)
    assert argmax == tuple(range(25))


def test_worst_cond_at_twenty_vectors():
    phi, _ = alltop_mub_profile(5)
    result = scan_subframes(phi, 20, EXHAUSTIVE, orders=(1, 2))
    assert result.subsets == math.comb(25, 20)
    assert result.worst_cond == pytest.approx(1.451066, abs=2e-6)
    sub = phi.matrix[:, list(result.argmax)]
    eigenvalues = np.linalg.eigvalsh(sub @ sub.conj().T)
    assert math.sqrt(eigenvalues[-1] / eigenvalues[0]) == pytest.approx(result.worst_cond, rel=1e-9)
    assert trace_cond_estimate(phi, 20, 1) == pytest.approx(1.732051, abs=2e-6)


def test_scan_solvers_agree():
    phi, _ = alltop_mub_profile(5)
    jacobi = scan_subframes(phi, 21, EXHAUSTIVE, orders=(1, 2), solver="jacobi")
    lapack = scan_subframes(phi, 21, EXHAUSTIVE, orders=(1, 2), solver="lapack")
    auto = scan_subframes(phi, 21, EXHAUSTIVE, orders=(1, 2), solver="auto")
    assert jacobi.worst_cond == pytest.approx(lapack.worst_cond, rel=1e-10)
    assert auto.worst_cond == lapack.worst_cond
    assert jacobi.max_delta == lapack.max_delta


def test_scan_independent_of_threads():
    phi, _ = alltop_mub_profile(5)
    one = scan_subframes(phi, 20, EXHAUSTIVE, threads=1)
    many = scan_subframes(phi, 20, EXHAUSTIVE, threads=3)
    assert one == many
    sampled_one = scan_subframes(phi, 18, SAMPLE, samples=70000, seed=4, threads=1)
    sampled_many = scan_subframes(phi, 18, SAMPLE, samples=70000, seed=4, threads=3)
    assert sampled_one == sampled_many


def test_scan_guards():
    phi, _ = alltop_mub_profile(7)
    with pytest.raises(SubsetTooLarge):
        scan_subframes(phi, 25, EXHAUSTIVE)
    with pytest.raises(InvalidParameter):
        scan_subframes(phi, 0, EXHAUSTIVE)
    with pytest.raises(InvalidParameter):
        scan_subframes(phi, 10, SAMPLE, samples=10)
    with pytest.raises(InvalidParameter):
        scan_subframes(phi, 10, "random", samples=10, seed=1)


def test_non_spanning_subframe_has_infinite_cond():
    phi, _ = alltop_mub_profile(5)
    cond, _ = enumerate_worst_cond(phi, 4)
    assert math.isinf(cond)


def test_ambiguity_sequence_of_alltop():
    d = ambiguity_sequence(alltop_window(5))
    assert d[0] == pytest.approx(1.0)
    np.testing.assert_allclose(d[1:21], 0.2, atol=1e-12)
    np.testing.assert_allclose(d[21:], 0.0, atol=1e-12)


def test_gabor_nerf_alltop():
    g = alltop_window(5)
    assert gabor_nerf_lower_bound(g, 24) == pytest.approx(2.0)
    assert gabor_nerf_lower_bound(g, 23) == pytest.approx(-0.4)
    assert gabor_nerf_bound(g, 0.04) == pytest.approx(math.sqrt(2.5))
    assert math.isinf(gabor_nerf_bound(g, 0.08))
    assert gabor_nerf_bound(g, 0.0) == pytest.approx(math.sqrt(5 / 4.6))
    # The bound covers the true worst case
    assert gabor_nerf_bound(g, 0.04) >= ALLTOP_5_TABLE[0.04][3]


def test_gabor_nerf_requires_unit_window():
    with pytest.raises(NotUnitNorm):
        gabor_nerf_bound(custom_window([1.0, 1.0, 0.0]), 0.1)
    with pytest.raises(InvalidParameter):
        gabor_nerf_lower_bound(alltop_window(5), 26)


def test_retained_count():
    assert retained_count(0.0, 25) == 25
    assert retained_count(1 / 3, 60) == 40
    assert retained_count(0.2, 25) == 20
    assert retained_count(0.99, 10) == 1


def test_delta_p_without_erasures():
    M = 12
    g = make_window(WindowKind.SPHERE, M, seed=2)
    frame_set = product_set(range(3), M)
    value = delta_p(g, frame_set, 0.0, samples=5, seed=1)
    assert value == pytest.approx(regular_set_bounds(g, range(3))[0], rel=1e-9)


def test_delta_p_decreases_with_erasures():
    M = 8
    g = make_window(WindowKind.SPHERE, M, seed=3)
    frame_set = product_set(range(2), M)
    full = delta_p(g, frame_set, 0.0, samples=50, seed=1)
    erased = delta_p(g, frame_set, 0.25, samples=50, seed=1)
    exhaustive = delta_p(g, frame_set, 0.25, mode=EXHAUSTIVE)
    assert exhaustive <= erased + 1e-12
    assert erased <= full + 1e-12


def test_mub_table_rows():
    rows = mub_table(5, p_list=[0.0, 0.04, 0.2])
    assert [row.J for row in rows] == [25, 24, 20]
    for row in rows:
        m1, m2, theoretical, worst = ALLTOP_5_TABLE[row.p]
        assert approx_or_inf(row.est_trace_m1, m1)
        assert approx_or_inf(row.est_trace_m2, m2)
        assert approx_or_inf(row.est_theoretical, theoretical)
        assert approx_or_inf(row.worst_cond, worst)


@pytest.mark.slow
def test_full_alltop_table():
    rows = mub_table(5, threads=4)
    assert [row.p for row in rows] == TABLE_P_LIST
    for row in rows:
        m1, m2, theoretical, worst = ALLTOP_5_TABLE[row.p]
        assert approx_or_inf(row.est_trace_m1, m1)
        assert approx_or_inf(row.est_trace_m2, m2)
        assert approx_or_inf(row.est_theoretical, theoretical)
        assert approx_or_inf(row.worst_cond, worst)
        # Every estimate bounds the true worst case from above
        assert row.worst_cond <= row.est_trace_m2 + 1e-9
        assert row.est_trace_m2 <= row.est_trace_m1 + 1e-9
        assert row.est_trace_m1 <= row.est_theoretical + 1e-9


@pytest.mark.parametrize("M", [4, 6, 9])
def test_one_erasure_from_full_steinhaus_frame(M):
    g = make_window(WindowKind.STEINHAUS, M, seed=M)
    frame_set = full_set(M)
    # ceil((1 - p) M^2) = M^2 - 1
    p = 0.5 / M ** 2
    assert retained_count(p, M * M) == M * M - 1
    value = delta_p(g, frame_set, p, mode=EXHAUSTIVE)
    assert value >= M - 1 - 1e-9
    assert value == pytest.approx(M - 1, abs=1e-9)
    for erased in frame_set.pairs()[:M]:
        kept = [point for point in frame_set.pairs() if point != erased]
        report = frame_bounds(synthesize(g, explicit_set(M, kept)))
        assert report.upper_bound <= M + 1e-9


@pytest.mark.parametrize("J", [20, 21, 22, 23, 24])
def test_partition_estimate_matches_exhaustive_scan(J):
    phi, profile = alltop_mub_profile(5)
    scan = scan_subframes(phi, J, EXHAUSTIVE, orders=(1,))
    assert mub_trace_m1_via_partitions(profile, J) == pytest.approx(cond_from_delta(scan.max_delta[1]), rel=1e-9)


def test_partition_estimate_infinite_for_small_subframes():
    phi, profile = alltop_mub_profile(5)
    scan = scan_subframes(phi, 5, EXHAUSTIVE, orders=(1,))
    assert math.isinf(mub_trace_m1_via_partitions(profile, 5))
    assert math.isinf(cond_from_delta(scan.max_delta[1]))


@pytest.mark.slow
def test_delta_one_third_stays_away_from_zero():
    values = []
    for M in range(20, 61, 10):
        g = make_window(WindowKind.SPHERE, M, seed=M)
        values.append(delta_p(g, product_set(range(5), M), 1 / 3, samples=1000, seed=M))
    assert all(v > 0.0 for v in values)
    assert values[-1] >= 0.01 * values[0]
