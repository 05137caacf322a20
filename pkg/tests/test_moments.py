import itertools
import math

import numpy as np
import pytest

from gaborbench.gabor import bernoulli_set, explicit_set, full_set, product_set
from gaborbench.models.window import WindowKind
from gaborbench.moments import (
    bijection_weight,
    deviation_probability_bound,
    exact_trace_moment_steinhaus,
    expected_trace2_gaussian,
    expected_trace2_steinhaus,
    gaussian_upper_bound,
    mc_trace_moment,
    mc_trace_moments,
    random_set_trace_moment,
    steinhaus_subset_failure_bound,
    steinhaus_upper_bound,
)
from gaborbench.schemas.moments import TRACE_MOMENT_COLUMNS, Normalization
from gaborbench.utils.exceptions import InvalidParameter, MTooLarge, TooManyTerms


def brute_force_trace_moment(frame_set, m):
    """Sum over j and lambda tuples of phase times bijection weight."""
    M = frame_set.dim
    points = frame_set.pairs()
    total = 0.0 + 0.0j
    for j in itertools.product(range(M), repeat=m):
        if any(j[t] == j[(t + 1) % m] for t in range(m)):
            continue
        for lams in itertools.product(points, repeat=m):
            k = [lam[0] for lam in lams]
            weight = bijection_weight(j, k, M)
            if weight == 0.0:
                continue
            phase = np.exp(2j * np.pi * sum(lam[1] * (j[t] - j[(t + 1) % m]) for t, lam in enumerate(lams)) / M)
            total += weight * phase
    return total.real


def test_closed_forms_examples():
    single = explicit_set(5, [(0, 0)])
    assert expected_trace2_steinhaus(single) == pytest.approx(0.8)
    assert expected_trace2_gaussian(single) == 1.0
    # Time product F x Z_M is tight for Steinhaus windows
    assert expected_trace2_steinhaus(product_set([0, 2], 6)) == pytest.approx(0.0)
    frequency = product_set([1, 3], 6, side="frequency")
    assert expected_trace2_steinhaus(frequency) == pytest.approx(12 - 6 * 4 / 6)
    assert expected_trace2_gaussian(frequency) == 12.0


def test_steinhaus_below_gaussian():
    for seed in range(20):
        frame_set = bernoulli_set(7, 0.3, seed=seed)
        assert expected_trace2_steinhaus(frame_set) < expected_trace2_gaussian(frame_set)


def test_exact_matches_closed_form_for_order_two():
    rng = np.random.default_rng(17)
    for _ in range(50):
        M = int(rng.integers(2, 11))
        mask = rng.random((M, M)) < rng.uniform(0.1, 0.6)
        mask[rng.integers(M), rng.integers(M)] = True
        frame_set = explicit_set(M, [tuple(p) for p in np.argwhere(mask)])
        assert exact_trace_moment_steinhaus(frame_set, 2) == pytest.approx(
            expected_trace2_steinhaus(frame_set), abs=1e-8
        )


def test_exact_first_moment_is_zero():
    assert exact_trace_moment_steinhaus(full_set(4), 1) == 0.0


@pytest.mark.parametrize("m", [2, 3])
def test_exact_matches_brute_force(m):
    frame_set = explicit_set(3, [(0, 0), (0, 2), (1, 1), (2, 0)])
    assert exact_trace_moment_steinhaus(frame_set, m) == pytest.approx(
        brute_force_trace_moment(frame_set, m), abs=1e-10
    )


def test_bijection_weight_examples():
    assert bijection_weight((0, 1), (0, 0), 5) == pytest.approx(1 / 25)
    assert bijection_weight((0, 1), (0, 1), 5) == 0.0
    with pytest.raises(MTooLarge):
        bijection_weight(tuple(range(9)), (0,) * 9, 10)
    with pytest.raises(InvalidParameter):
        bijection_weight((0, 1), (0,), 5)


def test_exact_sum_guarded():
    with pytest.raises(TooManyTerms):
        exact_trace_moment_steinhaus(full_set(20), 4)


def test_mc_matches_exact_for_steinhaus():
    frame_set = explicit_set(6, [(0, 1), (0, 4), (1, 0), (2, 2), (2, 3), (2, 5), (4, 1)])
    orders = [2, 3, 4]
    estimates = mc_trace_moments(WindowKind.STEINHAUS, frame_set, orders, 4000, seed=11)
    for order, estimate in zip(orders, estimates):
        exact = exact_trace_moment_steinhaus(frame_set, order)
        assert estimate.m == order
        assert abs(estimate.mean - exact) <= 4 * estimate.std_error + 1e-9


def test_mc_matches_gaussian_closed_form():
    frame_set = explicit_set(5, [(0, 0), (1, 3), (1, 4), (3, 2)])
    estimate = mc_trace_moment(WindowKind.GAUSSIAN, frame_set, 2, 4000, seed=3)
    assert abs(estimate.mean - expected_trace2_gaussian(frame_set)) <= 4 * estimate.std_error
    assert estimate.normalized_mean == pytest.approx((5 / 4) ** 2 * estimate.mean)


def test_mc_independent_of_threads():
    frame_set = bernoulli_set(8, 0.4, seed=2)
    one = mc_trace_moments(WindowKind.SPHERE, frame_set, [2, 4], 600, seed=5, threads=1)
    many = mc_trace_moments(WindowKind.SPHERE, frame_set, [2, 4], 600, seed=5, threads=3)
    assert [e.mean for e in one] == [e.mean for e in many]
    assert [e.std_error for e in one] == [e.std_error for e in many]


def test_mc_parameter_checks():
    frame_set = full_set(3)
    with pytest.raises(InvalidParameter):
        mc_trace_moments(WindowKind.STEINHAUS, frame_set, [0], 10, seed=0)
    with pytest.raises(InvalidParameter):
        mc_trace_moments(WindowKind.STEINHAUS, frame_set, [2], 1, seed=0)
    with pytest.raises(InvalidParameter):
        mc_trace_moments(WindowKind.ALLTOP, explicit_set(5, [(0, 0)]), [2], 10, seed=0)


def test_random_set_trace_moment_reproducible():
    first = random_set_trace_moment(10, 0.4, 2, 40, seed=8, threads=1)
    second = random_set_trace_moment(10, 0.4, 2, 40, seed=8, threads=2)
    assert first == second
    mean, std_error = first
    assert mean > 0 and std_error > 0


def test_deviation_probability_bound():
    frame_set = full_set(4)
    assert deviation_probability_bound(frame_set, 1, 0.5, 0.25) == pytest.approx(1 / 16 * 4 * 0.25)
    assert deviation_probability_bound(frame_set, 1, 0.1, 100.0) == 1.0
    with pytest.raises(InvalidParameter):
        deviation_probability_bound(frame_set, 1, 0.0, 1.0)


def test_upper_bound_formulas():
    frame_set = product_set([0, 1], 4)
    assert steinhaus_upper_bound(frame_set, 0.5) == pytest.approx(2 + math.sqrt(8))
    assert gaussian_upper_bound(frame_set, 0.5) == pytest.approx(4 * (0.5 + 1.0))
    assert steinhaus_upper_bound(full_set(3), 0.1) == pytest.approx(3.0)
    with pytest.raises(InvalidParameter):
        steinhaus_upper_bound(frame_set, 0.0)


def test_subset_failure_bound():
    assert steinhaus_subset_failure_bound(0.0, 0.5, 0.5) == 0.0
    assert steinhaus_subset_failure_bound(0.2, 0.5, 1.0) == pytest.approx(0.5)
    assert steinhaus_subset_failure_bound(0.5, 0.1, 0.1) == 1.0
    with pytest.raises(InvalidParameter):
        steinhaus_subset_failure_bound(1.0, 0.5, 0.5)


def random_nonempty_set(rng, M):
    mask = rng.random((M, M)) < rng.uniform(0.1, 0.5)
    mask[rng.integers(M), rng.integers(M)] = True
    return explicit_set(M, [tuple(p) for p in np.argwhere(mask)])


@pytest.mark.slow
@pytest.mark.parametrize("kind", [WindowKind.STEINHAUS, WindowKind.GAUSSIAN])
def test_closed_forms_match_monte_carlo(kind):
    closed_form = expected_trace2_steinhaus if kind == WindowKind.STEINHAUS else expected_trace2_gaussian
    rng = np.random.default_rng(51)
    passed = 0
    for case in range(20):
        frame_set = random_nonempty_set(rng, int(rng.integers(2, 33)))
        estimate = mc_trace_moment(kind, frame_set, 2, 10000, seed=case)
        passed += abs(estimate.mean - closed_form(frame_set)) <= 4 * estimate.std_error + 1e-9
    assert passed >= 19


def test_normalization_selects_reported_value():
    frame_set = explicit_set(6, [(0, 0), (2, 1), (3, 5)])
    raw = mc_trace_moment(WindowKind.GAUSSIAN, frame_set, 2, 50, seed=4)
    normalized = mc_trace_moment(WindowKind.GAUSSIAN, frame_set, 2, 50, seed=4, normalization=Normalization.NORMALIZED)
    assert raw.normalization == Normalization.RAW
    assert raw.value == raw.mean
    assert normalized.value == normalized.normalized_mean == pytest.approx(4 * raw.mean)
    assert list(raw.csv_row()) == TRACE_MOMENT_COLUMNS
    assert raw.csv_row()["kind"] == "gaussian"


@pytest.mark.parametrize("M", [6, 12, 20])
def test_full_frequency_product_has_zero_normalized_trace(M):
    frame_set = product_set(range(M // 3), M)
    estimate = mc_trace_moment(WindowKind.STEINHAUS, frame_set, 4, 20, seed=M, normalization=Normalization.NORMALIZED)
    assert estimate.value == pytest.approx(0.0, abs=1e-9)
