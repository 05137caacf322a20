"""Fourier bias of subsets of Z_M and Monte-Carlo checks of the tail estimates used for random frames."""
import logging
import math
from typing import Sequence

import numpy as np

from gaborbench.gabor import bernoulli_set, draw_windows, random_density, synthesize
from gaborbench.linalg import eigvalsh
from gaborbench.metrics import frame_bounds, regular_set_bounds
from gaborbench.models.subset import SubsetOfZM
from gaborbench.models.window import Window, WindowKind
from gaborbench.moments import deviation_probability_bound, expected_trace2_steinhaus, steinhaus_upper_bound
from gaborbench.sampling import Block, run_blocks
from gaborbench.schemas.tail import TailCheckReport
from gaborbench.utils.exceptions import InvalidParameter

logger = logging.getLogger(__name__)

TRIAL_BLOCK = 1024
FRAME_TRIAL_BLOCK = 16


def _character_table(M: int) -> np.ndarray:
    """exp(2 pi i c m / M) for c in Z_M (rows) and m = 1..M-1 (columns)."""
    c = np.arange(M)[:, None]
    m = np.arange(1, M)[None, :]
    return np.exp(2j * np.pi * ((c * m) % M) / M)


def _bias_of_masks(masks: np.ndarray, table: np.ndarray) -> np.ndarray:
    return np.abs(masks.astype(float) @ table).max(axis=-1)


def fourier_bias(subset: SubsetOfZM) -> float:
    """max over m != 0 of |sum_{c in C} exp(2 pi i c m / M)|."""
    M = subset.M
    if M < 2:
        raise InvalidParameter(f"Fourier bias needs M >= 2, got {M}")
    if len(subset) == 0 or len(subset) == M:
        return 0.0
    mask = np.zeros(M)
    mask[subset.members] = 1.0
    return float(_bias_of_masks(mask, _character_table(M)))


def fourier_bias_normalized(subset: SubsetOfZM) -> float:
    return fourier_bias(subset) / math.sqrt(subset.M)


def _report(lemma: str, M: int, params: str, violations: int, trials: int, bound: float) -> TailCheckReport:
    report = TailCheckReport(
        lemma=lemma,
        M=M,
        params=params,
        trials=trials,
        violations=int(violations),
        empirical_rate=violations / trials,
        theoretical_bound=float(bound),
    )
    logger.info(f"{lemma}: {violations}/{trials} violations, bound {bound:.6g}")
    return report


def _require_trials(trials: int) -> None:
    if trials < 1:
        raise InvalidParameter(f"Trial count must be positive, got {trials}")


def roots_of_unity_tail_check(
    M: int, tau: float, c_const: float, trials: int, seed: int, threads: int = 1
) -> TailCheckReport:
    """
    Frequency of ||B||_u >= C log M for Bernoulli(tau) subsets B of Z_M.

    The reported bound is M^-(C/(2 sqrt 2) - 2), valid for C > 4 sqrt 2.
    """
    if c_const <= 4 * math.sqrt(2):
        raise InvalidParameter(f"C must exceed 4*sqrt(2), got {c_const}")
    if not 0.0 < tau < 1.0:
        raise InvalidParameter(f"tau must lie in (0, 1), got {tau}")
    if M < 2:
        raise InvalidParameter(f"M must be at least 2, got {M}")
    _require_trials(trials)
    table = _character_table(M)
    threshold = c_const * math.log(M)

    def run(rng: np.random.Generator, block: Block) -> int:
        masks = rng.random((block.count, M)) < tau
        return int(np.sum(_bias_of_masks(masks, table) >= threshold))

    violations = sum(run_blocks(run, trials, TRIAL_BLOCK, seed, threads))
    bound = M ** (-(c_const / (2 * math.sqrt(2)) - 2))
    return _report("roots-of-unity", M, f"tau={tau};C={c_const}", violations, trials, bound)


def hoeffding_cardinality_check(
    M: int, tau: float, t: float, trials: int, seed: int, threads: int = 1
) -> TailCheckReport:
    """Frequency of ||Lambda| - tau M^2| > t M^2 against 2 exp(-2 t^2 M^2)."""
    if t <= 0:
        raise InvalidParameter(f"t must be positive, got {t}")
    if not 0.0 < tau <= 1.0:
        raise InvalidParameter(f"tau must lie in (0, 1], got {tau}")
    _require_trials(trials)
    n = M * M

    def run(rng: np.random.Generator, block: Block) -> int:
        sizes = rng.binomial(n, tau, size=block.count)
        return int(np.sum(np.abs(sizes - tau * n) > t * n))

    violations = sum(run_blocks(run, trials, TRIAL_BLOCK, seed, threads))
    bound = min(1.0, 2 * math.exp(-2 * t * t * n))
    return _report("hoeffding", M, f"tau={tau};t={t}", violations, trials, bound)


def gaussian_norm_violates(h) -> bool:
    norm = float(np.linalg.norm(np.asarray(h)))
    return not 0.5 < norm < 2.0


def gaussian_norm_check(M: int, trials: int, seed: int, threads: int = 1) -> TailCheckReport:
    """Frequency of ||h|| outside (1/2, 2) for h complex Gaussian with covariance I/M."""
    if M < 8:
        raise InvalidParameter(f"Gaussian norm check needs M >= 8, got {M}")
    _require_trials(trials)

    def run(rng: np.random.Generator, block: Block) -> int:
        norms = np.linalg.norm(draw_windows(WindowKind.GAUSSIAN, M, block.count, rng), axis=1)
        return int(np.sum(~((norms > 0.5) & (norms < 2.0))))

    violations = sum(run_blocks(run, trials, TRIAL_BLOCK, seed, threads))
    bound = math.exp(-M / 2) + math.exp(-9 * M / 32)
    return _report("gaussian-norm", M, "", violations, trials, bound)


def fourier_bias_concentration_check(
    base: SubsetOfZM,
    tau: float,
    lam: float,
    threshold: float,
    trials: int,
    seed: int,
    threads: int = 1,
) -> TailCheckReport:
    """
    Frequency of | ||B||_u - tau ||A||_u | >= threshold for Bernoulli(tau) subsets B of A.

    `threshold` plays the part of lambda*sigma in the unnormalized convention;
    the reported bound is 4M max(exp(-lambda^2/8), exp(-threshold/(2 sqrt 2))).
    """
    M = base.M
    if M < 2 or len(base) == 0:
        raise InvalidParameter("Base set must be a nonempty subset of Z_M with M >= 2")
    if not 0.0 < tau <= 1.0 or lam <= 0 or threshold <= 0:
        raise InvalidParameter("Need 0 < tau <= 1, lam > 0 and threshold > 0")
    _require_trials(trials)
    table = _character_table(M)
    center = tau * fourier_bias(base)

    def run(rng: np.random.Generator, block: Block) -> int:
        keep = rng.random((block.count, len(base))) < tau
        masks = np.zeros((block.count, M), dtype=bool)
        masks[:, base.members] = keep
        return int(np.sum(np.abs(_bias_of_masks(masks, table) - center) >= threshold))

    violations = sum(run_blocks(run, trials, TRIAL_BLOCK, seed, threads))
    bound = min(1.0, 4 * M * max(math.exp(-lam ** 2 / 8), math.exp(-threshold / (2 * math.sqrt(2)))))
    params = f"A_size={len(base)};tau={tau};lam={lam};threshold={threshold}"
    return _report("fourier-bias", M, params, violations, trials, bound)


def structured_window_check(
    kind: WindowKind, M: int, F: Sequence[int], trials: int, seed: int, threads: int = 1
) -> TailCheckReport:
    """
    Frame bounds of (g, F x Z_M) for Gaussian or sphere-uniform windows.

    A violation is leaving |F|/2 < A <= B < 5|F| (Gaussian) or
    |F|/8 < A <= B < 20|F| (sphere).
    """
    kind = WindowKind(kind)
    if kind not in (WindowKind.GAUSSIAN, WindowKind.SPHERE):
        raise InvalidParameter(f"Structured check supports gaussian and sphere windows, got {kind.value}")
    F = sorted(set(int(v) for v in F))
    if not F or min(F) < 0 or max(F) >= M:
        raise InvalidParameter(f"F must be a nonempty subset of Z_{M}")
    _require_trials(trials)
    size = len(F)
    low, high = (size / 2, 5 * size) if kind == WindowKind.GAUSSIAN else (size / 8, 20 * size)

    def run(rng: np.random.Generator, block: Block) -> int:
        count = 0
        for values in draw_windows(kind, M, block.count, rng):
            A, B = regular_set_bounds(Window(dim=M, values=values, kind=kind), F)
            count += not (low < A <= B < high)
        return count

    violations = sum(run_blocks(run, trials, TRIAL_BLOCK, seed, threads))
    bound = M * (math.exp(-2 * size) + math.exp(-size / 8))
    if kind == WindowKind.SPHERE:
        bound += math.exp(-M / 2) + math.exp(-9 * M / 32)
    return _report(f"structured-{kind.value}", M, f"F_size={size}", violations, trials, min(1.0, bound))


def upper_bound_coverage_check(
    M: int, tau: float, eps: float, trials: int, seed: int, threads: int = 1
) -> TailCheckReport:
    """Frequency of B > |Lambda|/M + sqrt(|Lambda|(1 - |Lambda|/M^2)/eps) for Steinhaus windows and Bernoulli sets."""
    _require_trials(trials)

    def run(rng: np.random.Generator, block: Block) -> int:
        count = 0
        for _ in range(block.count):
            frame_set = bernoulli_set(M, tau, rng=rng)
            g = Window(dim=M, values=draw_windows(WindowKind.STEINHAUS, M, 1, rng)[0], kind=WindowKind.STEINHAUS)
            report = frame_bounds(synthesize(g, frame_set))
            count += report.upper_bound > steinhaus_upper_bound(frame_set, eps)
        return count

    violations = sum(run_blocks(run, trials, FRAME_TRIAL_BLOCK, seed, threads))
    return _report("steinhaus-upper", M, f"tau={tau};eps={eps}", violations, trials, eps)


def random_lambda_check(
    M: int, m: int, c_const: float, delta: float, trials: int, seed: int, threads: int = 1
) -> TailCheckReport:
    """
    Frequency of A or B leaving (1 +- delta)|Lambda|/M for a Steinhaus window and
    a Bernoulli set with inclusion probability C log M / M^((m-1)/m).

    The reported bound averages the second-moment bound
    (M/|Lambda|)^2 delta^-2 E Tr H^2 over the drawn sets.
    """
    if not 0 < delta < 1:
        raise InvalidParameter(f"delta must lie in (0, 1), got {delta}")
    _require_trials(trials)
    tau = random_density(M, c_const, m)

    def run(rng: np.random.Generator, block: Block):
        count, bound = 0, 0.0
        for _ in range(block.count):
            frame_set = bernoulli_set(M, tau, rng=rng)
            g = Window(dim=M, values=draw_windows(WindowKind.STEINHAUS, M, 1, rng)[0], kind=WindowKind.STEINHAUS)
            phi = synthesize(g, frame_set).matrix
            eigenvalues = eigvalsh(phi @ phi.conj().T)
            center = frame_set.cardinality() / M
            count += eigenvalues[0] < (1 - delta) * center or eigenvalues[-1] > (1 + delta) * center
            bound += deviation_probability_bound(frame_set, 1, delta, expected_trace2_steinhaus(frame_set))
        return count, bound

    results = run_blocks(run, trials, FRAME_TRIAL_BLOCK, seed, threads)
    violations = sum(r[0] for r in results)
    bound = sum(r[1] for r in results) / trials
    return _report("random-lambda", M, f"m={m};C={c_const};delta={delta};tau={tau:.6f}", violations, trials, bound)
