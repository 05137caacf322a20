"""Expected trace moments of the centered frame operator for random windows."""
import itertools
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from config import TERM_LIMIT
from gaborbench.gabor import bernoulli_set, draw_windows, synthesize_batch
from gaborbench.guards import PermutationGuard, TermGuard
from gaborbench.models.frame_set import FrameSet
from gaborbench.models.window import WindowKind
from gaborbench.sampling import Block, run_blocks
from gaborbench.schemas.moments import Normalization, TraceMomentEstimate
from gaborbench.utils.exceptions import InvalidParameter, NumericalError

logger = logging.getLogger(__name__)

# Entries of one (samples, M, N) synthesis stack kept in memory at once
_STACK_ENTRIES = 1 << 22
# Index tuples evaluated together in the exact sum
_EXACT_BATCH = 1 << 18


def _require_nonempty(frame_set: FrameSet) -> int:
    N = frame_set.cardinality()
    if N == 0:
        raise InvalidParameter("Frame set must be nonempty")
    return N


def expected_trace2_steinhaus(frame_set: FrameSet) -> float:
    """E Tr H^2 = |Lambda| - (1/M) sum_k |A_k|^2 for a Steinhaus window."""
    N = _require_nonempty(frame_set)
    sizes = frame_set.fiber_sizes()
    return float(N - np.sum(sizes.astype(float) ** 2) / frame_set.dim)


def expected_trace2_gaussian(frame_set: FrameSet) -> float:
    return float(_require_nonempty(frame_set))


def _trace_powers(H: np.ndarray, orders: Sequence[int]) -> np.ndarray:
    """Tr(H^o) for each order, batched over the leading axis."""
    result = np.empty(H.shape[:-2] + (len(orders),))
    power = H
    for o in range(1, max(orders) + 1):
        if o > 1:
            power = power @ H
        for i, order in enumerate(orders):
            if order == o:
                result[..., i] = np.trace(power, axis1=-2, axis2=-1).real
    return result


def _centered(phi: np.ndarray) -> np.ndarray:
    M, N = phi.shape[-2], phi.shape[-1]
    return phi @ np.conj(np.swapaxes(phi, -1, -2)) - (N / M) * np.eye(M)


def _block_size(M: int, N: int) -> int:
    return max(1, min(256, _STACK_ENTRIES // (M * N)))


def _summarize(values: np.ndarray) -> Tuple[float, float]:
    n = values.shape[0]
    mean = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return mean, std_error


def mc_trace_moments(
    kind: WindowKind,
    frame_set: FrameSet,
    orders: Sequence[int],
    samples: int,
    seed: int,
    threads: int = 1,
    normalization: Normalization = Normalization.RAW,
) -> List[TraceMomentEstimate]:
    """
    Monte-Carlo estimates of E[Tr H^m] for several orders from one set of windows.

    Args:
        kind: Random window kind
        frame_set: Fixed frame set Lambda
        orders: Moment orders m >= 1
        samples: Number of windows, at least 2
        seed: Root seed; windows come in fixed-size blocks with one substream each
        threads: Worker count, does not change the result
        normalization: Which of mean and normalized_mean the estimates report as value

    Returns:
        List[TraceMomentEstimate]: One estimate per order, in the given order
    """
    kind = WindowKind(kind)
    N = _require_nonempty(frame_set)
    orders = [int(o) for o in orders]
    if not orders or min(orders) < 1:
        raise InvalidParameter("Moment orders must be positive")
    if samples < 2:
        raise InvalidParameter(f"At least two samples are needed, got {samples}")
    M = frame_set.dim

    def run(rng: np.random.Generator, block: Block) -> np.ndarray:
        windows = draw_windows(kind, M, block.count, rng)
        return _trace_powers(_centered(synthesize_batch(windows, frame_set)), orders)

    traces = np.concatenate(run_blocks(run, samples, _block_size(M, N), seed, threads), axis=0)
    logger.debug(f"Sampled {samples} {kind.value} windows for |Lambda|={N}, M={M}")

    estimates = []
    for i, m in enumerate(orders):
        mean, std_error = _summarize(traces[:, i])
        estimates.append(
            TraceMomentEstimate(
                M=M,
                lambda_size=N,
                kind=kind.value,
                m=m,
                samples=samples,
                mean=mean,
                std_error=std_error,
                normalized_mean=(M / N) ** m * mean,
                normalization=normalization,
            )
        )
    return estimates


def mc_trace_moment(
    kind: WindowKind,
    frame_set: FrameSet,
    m: int,
    samples: int,
    seed: int,
    threads: int = 1,
    normalization: Normalization = Normalization.RAW,
) -> TraceMomentEstimate:
    return mc_trace_moments(kind, frame_set, [m], samples, seed, threads, normalization)[0]


def random_set_trace_moment(
    M: int, tau: float, m: int, samples: int, seed: int, threads: int = 1
) -> Tuple[float, float]:
    """
    Mean and standard error of (M/|Lambda|)^m Tr H^m when both the Steinhaus
    window and the Bernoulli(tau) frame set are redrawn for every sample.
    """
    if samples < 1:
        raise InvalidParameter(f"Sample count must be positive, got {samples}")

    def run(rng: np.random.Generator, block: Block) -> np.ndarray:
        values = np.empty(block.count)
        for i in range(block.count):
            frame_set = bernoulli_set(M, tau, rng=rng)
            window = draw_windows(WindowKind.STEINHAUS, M, 1, rng)
            H = _centered(synthesize_batch(window, frame_set))[0]
            N = frame_set.cardinality()
            values[i] = (M / N) ** m * _trace_powers(H, [m])[0]
        return values

    values = np.concatenate(run_blocks(run, samples, 16, seed, threads))
    return _summarize(values)


def bijection_weight(j: Sequence[int], k: Sequence[int], M: int) -> float:
    """
    1/M^m when some permutation a satisfies j_t - k_t = j_a(t) - k_(a(t)-1) mod M
    for every t (indices cyclic, k_0 = k_m), otherwise 0.

    Raises:
        MTooLarge: For m above the permutation-search limit
    """
    if len(j) != len(k) or not j:
        raise InvalidParameter("Index tuples must be nonempty and of equal length")
    m = len(j)
    PermutationGuard().check(m)
    lhs = [(j[t] - k[t]) % M for t in range(m)]
    rhs = [(j[t] - k[t - 1]) % M for t in range(m)]
    for alpha in itertools.permutations(range(m)):
        if all(lhs[t] == rhs[alpha[t]] for t in range(m)):
            return 1.0 / M ** m
    return 0.0


def exact_trace_moment_steinhaus(frame_set: FrameSet, m: int) -> float:
    """
    E Tr H^m for a Steinhaus window by exact combinatorial summation.

    The sum runs over j tuples with cyclically distinct neighbours and over
    tuples of nonempty fibers A_k; the frequencies inside a fiber collapse to
    the exponential sums sum_{l in A_k} exp(2 pi i l d / M).

    Raises:
        TooManyTerms: If M^m times (number of nonempty fibers)^m exceeds the term limit
    """
    N = _require_nonempty(frame_set)
    if m < 1:
        raise InvalidParameter(f"Moment order must be positive, got {m}")
    M = frame_set.dim
    fibers = frame_set.fibers()
    support = np.array([k for k in range(M) if fibers[k].size], dtype=np.int64)
    TermGuard(TERM_LIMIT).check(M ** m * support.size ** m)
    if m == 1:
        return 0.0

    d = np.arange(M)
    # hat[i, d] = sum over l in A_(support[i]) of exp(2 pi i l d / M)
    hat = np.stack([np.exp(2j * np.pi * ((fibers[k][:, None] * d[None, :]) % M) / M).sum(axis=0) for k in support])

    j_tuples = np.array(list(itertools.product(range(M), repeat=m)), dtype=np.int64)
    j_next = np.roll(j_tuples, -1, axis=1)
    j_tuples = j_tuples[np.all(j_tuples != j_next, axis=1)]
    diffs = (j_tuples - np.roll(j_tuples, -1, axis=1)) % M

    k_index = np.array(list(itertools.product(range(support.size), repeat=m)), dtype=np.int64)
    k_tuples = support[k_index]
    k_prev = np.roll(k_tuples, 1, axis=1)

    total = 0.0 + 0.0j
    rows = max(1, _EXACT_BATCH // max(1, k_tuples.shape[0]))
    for start in range(0, j_tuples.shape[0], rows):
        J = j_tuples[start:start + rows, None, :]
        lhs = np.sort((J - k_tuples[None]) % M, axis=-1)
        rhs = np.sort((J - k_prev[None]) % M, axis=-1)
        matched = np.all(lhs == rhs, axis=-1)
        amplitude = np.ones(matched.shape, dtype=np.complex128)
        D = diffs[start:start + rows]
        for t in range(m):
            amplitude *= hat[k_index[None, :, t], D[:, None, t]]
        total += np.sum(amplitude[matched])

    total /= M ** m
    if abs(total.imag) > 1e-8 * max(1.0, abs(total.real)):
        raise NumericalError(f"Exact trace moment has imaginary part {total.imag:.3e}")
    logger.debug(f"Exact E Tr H^{m} over {j_tuples.shape[0]} x {k_tuples.shape[0]} index tuples")
    return float(total.real)


def deviation_probability_bound(frame_set: FrameSet, m: int, delta: float, trace_moment_2m: float) -> float:
    """min(1, (M/|Lambda|)^(2m) delta^(-2m) E Tr H^(2m))."""
    if delta <= 0:
        raise InvalidParameter(f"delta must be positive, got {delta}")
    if trace_moment_2m < 0:
        raise InvalidParameter("Trace moment of even order cannot be negative")
    N = _require_nonempty(frame_set)
    return float(min(1.0, (frame_set.dim / N) ** (2 * m) * delta ** (-2 * m) * trace_moment_2m))


def steinhaus_upper_bound(frame_set: FrameSet, eps: float) -> float:
    """Upper frame bound |Lambda|/M + sqrt(|Lambda|/eps (1 - |Lambda|/M^2)) holding with probability >= 1 - eps."""
    if not 0 < eps <= 1:
        raise InvalidParameter(f"eps must lie in (0, 1], got {eps}")
    N = _require_nonempty(frame_set)
    M = frame_set.dim
    return float(N / M + math.sqrt(N / eps * max(0.0, 1.0 - N / M ** 2)))


def steinhaus_subset_failure_bound(p: float, alpha: float, delta: float) -> float:
    """Failure probability p / (alpha (1 - p)) delta^-2 for Lambda inside F x Z_M, |F| = alpha M."""
    if not 0 <= p < 1 or alpha <= 0 or delta <= 0:
        raise InvalidParameter("Need 0 <= p < 1, alpha > 0 and delta > 0")
    return float(min(1.0, p / (alpha * (1 - p)) / delta ** 2))


def gaussian_upper_bound(frame_set: FrameSet, eps: float) -> float:
    """M (1 - p + sqrt((1 - p)/eps)) with |Lambda| = (1 - p) M^2, for a Gaussian window."""
    if not 0 < eps <= 1:
        raise InvalidParameter(f"eps must lie in (0, 1], got {eps}")
    N = _require_nonempty(frame_set)
    M = frame_set.dim
    kept = N / M ** 2
    return float(M * (kept + math.sqrt(kept / eps)))
