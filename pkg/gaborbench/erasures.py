"""Erasure robustness: subframe scans, MUB certification and NERF bounds."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import CHUNK_SIZE, FRAME_TOL, UNIT_NORM_TOL
from gaborbench.enumeration import chunk_ranges, combinations_chunk, sample_subsets
from gaborbench.gabor import alltop_window, concat, full_set, standard_basis_frame, synthesize
from gaborbench.guards import EnumerationGuard
from gaborbench.linalg import eigvalsh
from gaborbench.metrics import cond_from_delta
from gaborbench.models.frame_set import FrameSet
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import Window
from gaborbench.sampling import require_seed, substream
from gaborbench.schemas.nerf import MubProfile, NerfRow
from gaborbench.utils.exceptions import (
    CoherenceExceeded,
    InvalidParameter,
    NotOrthonormalBasis,
    NotUnitNorm,
)

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
SAMPLE = "sample"

# Default erasure rates: 0.00, 0.04, ..., 0.68
TABLE_P_LIST = [round(0.04 * i, 2) for i in range(18)]

_STACK_ENTRIES = 1 << 22
_MUB_TOL = 1e-8


@dataclass
class ScanResult:
    subsets: int
    worst_cond: float = 1.0
    argmax: Optional[Tuple[int, ...]] = None
    min_lower_bound: float = math.inf
    max_delta: Dict[int, float] = field(default_factory=dict)


def _chunk_size(M: int, J: int) -> int:
    return max(1, min(CHUNK_SIZE, _STACK_ENTRIES // (M * J)))


def _scan_chunk(
    matrix: np.ndarray, idx: np.ndarray, orders: Sequence[int], solver: Optional[str]
) -> ScanResult:
    M = matrix.shape[0]
    J = idx.shape[1]
    sub = np.transpose(matrix[:, idx], (1, 0, 2))
    S = sub @ np.conj(np.swapaxes(sub, -1, -2))
    eigenvalues = eigvalsh(S, solver=solver)
    lower, upper = eigenvalues[:, 0], eigenvalues[:, -1]
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(lower > FRAME_TOL, np.sqrt(upper / np.where(lower > 0, lower, 1.0)), np.inf)
    best = int(np.argmax(cond))
    result = ScanResult(
        subsets=idx.shape[0],
        worst_cond=float(cond[best]),
        argmax=tuple(int(c) for c in idx[best]),
        min_lower_bound=max(0.0, float(lower.min())),
    )
    if orders:
        H = S - (J / M) * np.eye(M)
        power = H
        for m in range(1, max(orders) + 1):
            if m > 1:
                power = power @ H
            if m in orders:
                # Tr(H^(2m)) = ||H^m||_F^2 for Hermitian H
                traces = np.sum(np.abs(power) ** 2, axis=(-2, -1))
                deltas = ((M / J) ** (2 * m) * traces) ** (1.0 / (2 * m))
                result.max_delta[m] = float(deltas.max())
    return result


def _merge(total: ScanResult, part: ScanResult) -> None:
    total.subsets += part.subsets
    # Strict comparison keeps the first maximizer in chunk order
    if total.argmax is None or part.worst_cond > total.worst_cond:
        total.worst_cond = part.worst_cond
        total.argmax = part.argmax
    total.min_lower_bound = min(total.min_lower_bound, part.min_lower_bound)
    for m, delta in part.max_delta.items():
        total.max_delta[m] = max(total.max_delta.get(m, 0.0), delta)


def scan_subframes(
    phi: SynthesisMatrix,
    J: int,
    mode: str = EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    orders: Sequence[int] = (1, 2),
    threads: int = 1,
    solver: Optional[str] = None,
) -> ScanResult:
    """
    One pass over J-column subframes collecting every erasure statistic.

    Exhaustive mode walks all C(N, J) subsets in colex order; sample mode draws
    `samples` uniform subsets, one substream per chunk. Chunks have a fixed
    size and are reduced in order, so the worker count never changes a result.

    Args:
        phi: Frame to erase columns from
        J: Number of retained columns
        mode: "exhaustive" or "sample"
        samples: Subset count in sample mode
        seed: Root seed in sample mode
        orders: Trace orders m for the deltas ((M/J)^(2m) Tr H_J^(2m))^(1/(2m))
        threads: Worker count
        solver: Eigensolver override

    Returns:
        ScanResult: worst condition number with its colex-first maximizer,
        minimum lower frame bound and maximal delta per order

    Raises:
        SubsetTooLarge: If exhaustive enumeration exceeds the guard
    """
    N, M = phi.N, phi.M
    if not 1 <= J <= N:
        raise InvalidParameter(f"Retained count must lie in [1, {N}], got {J}")
    orders = tuple(sorted(set(int(m) for m in orders)))
    if orders and orders[0] < 1:
        raise InvalidParameter("Trace orders must be positive")
    matrix = phi.matrix
    chunk = _chunk_size(M, J)

    if mode == EXHAUSTIVE:
        total = EnumerationGuard().check(N, J)

        def job(item):
            start, stop = item
            return _scan_chunk(matrix, combinations_chunk(N, J, start, stop), orders, solver)

        items = chunk_ranges(total, chunk)
    elif mode == SAMPLE:
        if samples is None or samples < 1:
            raise InvalidParameter("Sample mode needs a positive sample count")
        root = require_seed(seed, "sampled subframes")

        def job(item):
            index, (start, stop) = item
            idx = sample_subsets(N, J, stop - start, substream(root, index))
            return _scan_chunk(matrix, idx, orders, solver)

        items = list(enumerate(chunk_ranges(samples, chunk)))
    else:
        raise InvalidParameter(f"Unknown scan mode '{mode}'")

    logger.debug(f"Scanning {N} choose {J} subframes in {len(items)} chunks ({mode})")
    result = ScanResult(subsets=0)
    if threads <= 1 or len(items) <= 1:
        for item in items:
            _merge(result, job(item))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(job, items):
                _merge(result, part)
    return result


def enumerate_worst_cond(
    phi: SynthesisMatrix,
    J: int,
    mode: str = EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> Tuple[float, Tuple[int, ...]]:
    result = scan_subframes(phi, J, mode, samples, seed, orders=(), threads=threads)
    return result.worst_cond, result.argmax


def trace_cond_estimate(
    phi: SynthesisMatrix,
    J: int,
    m: int,
    mode: str = EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> float:
    result = scan_subframes(phi, J, mode, samples, seed, orders=(m,), threads=threads)
    return cond_from_delta(result.max_delta[m])


def mub_nerf_bound(p: float, alpha: float) -> float:
    """C = sqrt((1 + delta)/(1 - delta)) with delta^2 = p / (alpha (1 - p)); inf once delta >= 1."""
    if not 0.0 <= p < 1.0:
        raise InvalidParameter(f"Erasure rate must lie in [0, 1), got {p}")
    if alpha <= 0:
        raise InvalidParameter(f"alpha must be positive, got {alpha}")
    return cond_from_delta(math.sqrt(p / (alpha * (1.0 - p))))


def verify_mub(phi: SynthesisMatrix, basis_assignment: Sequence[int]) -> MubProfile:
    """
    Check that the columns form a union of orthonormal bases with cross-basis
    coherence at most 1/sqrt(M).

    Raises:
        InvalidParameter: If the assignment does not give M columns to every basis
        NotOrthonormalBasis: For the first basis failing orthonormality
        CoherenceExceeded: For the first pair of bases that is not unbiased
    """
    M, N = phi.M, phi.N
    assignment = np.asarray(basis_assignment, dtype=np.int64).reshape(-1)
    if assignment.shape[0] != N:
        raise InvalidParameter(f"Basis assignment covers {assignment.shape[0]} of {N} columns")
    labels = np.unique(assignment)
    m = labels.shape[0]
    if N != m * M:
        raise InvalidParameter(f"{N} columns cannot form {m} bases of C^{M}")
    blocks = []
    for i, label in enumerate(labels):
        block = phi.matrix[:, assignment == label]
        if block.shape[1] != M:
            raise InvalidParameter(f"Basis {int(label)} has {block.shape[1]} columns, expected {M}")
        deviation = float(np.max(np.abs(block.conj().T @ block - np.eye(M))))
        if deviation > _MUB_TOL:
            raise NotOrthonormalBasis(int(label), deviation)
        blocks.append(block)

    limit = 1.0 / math.sqrt(M) + _MUB_TOL
    worst = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            value = float(np.max(np.abs(blocks[i].conj().T @ blocks[j])))
            if value > limit:
                raise CoherenceExceeded(int(labels[i]), int(labels[j]), value)
            worst = max(worst, value)
    return MubProfile(m=m, M=M, basis_assignment=assignment.tolist(), alpha=m / M, coherence=worst)


def alltop_mub_profile(M: int, with_standard_basis: bool = False) -> Tuple[SynthesisMatrix, MubProfile]:
    """Full Alltop Gabor frame, bases indexed by the time shift k; optionally joined with the standard basis."""
    phi = synthesize(alltop_window(M), full_set(M))
    assignment = phi.column_labels[:, 0].tolist()
    if with_standard_basis:
        phi = concat(phi, standard_basis_frame(M))
        assignment += [M] * M
    return phi, verify_mub(phi, assignment)


def balanced_partition(J: int, m: int, M: int) -> List[int]:
    """Split J into m parts of size at most M as evenly as possible."""
    if not 0 < J <= m * M:
        raise InvalidParameter(f"Need 0 < J <= {m * M}, got {J}")
    q, r = divmod(J, m)
    return [q + 1] * r + [q] * (m - r)


def mub_trace_m1_via_partitions(profile: MubProfile, J: int) -> float:
    """
    Maximal first-order trace estimate over all J-subframes of an m-MUB frame.

    Tr H_J^2 = J - (1/M) sum_i |A_i|^2 where |A_i| counts retained columns of
    basis i, so the worst subframe is the balanced split.
    """
    M, m = profile.M, profile.m
    parts = balanced_partition(J, m, M)
    spread = J - sum(a * a for a in parts) / M
    delta = math.sqrt(max(0.0, (M / J) ** 2 * spread))
    return cond_from_delta(delta)


def ambiguity_sequence(g: Window) -> np.ndarray:
    """|<pi(lambda) g, g>|^2 over lambda in Z_M x Z_M, sorted decreasing."""
    phi = synthesize(g, full_set(g.dim)).matrix
    values = np.abs(phi.conj().T @ g.values) ** 2
    return np.sort(values)[::-1]


def _require_unit_window(g: Window) -> None:
    deviation = abs(g.norm - 1.0)
    if deviation > UNIT_NORM_TOL:
        raise NotUnitNorm(deviation)


def gabor_nerf_lower_bound(g: Window, J: int) -> float:
    """
    Lower frame bound valid for every J-subframe of the full Gabor frame of g.

    The frame potential of a J-subframe is at most J times the sum of the J
    largest ambiguity values, which gives
    J/M - (M-1)/(2M) - (J * sum_{j<=J} d[j] - J^2/M) / 2.
    """
    _require_unit_window(g)
    M = g.dim
    if not 1 <= J <= M * M:
        raise InvalidParameter(f"Retained count must lie in [1, {M * M}], got {J}")
    d = ambiguity_sequence(g)
    potential = J * float(d[:J].sum())
    return J / M - (M - 1) / (2 * M) - 0.5 * (potential - J * J / M)


def gabor_nerf_bound(g: Window, p: float) -> float:
    """Condition bound sqrt(M / A_lower) for subframes keeping round((1-p) M^2) vectors; inf when A_lower <= 0."""
    if not 0.0 <= p < 1.0:
        raise InvalidParameter(f"Erasure rate must lie in [0, 1), got {p}")
    _require_unit_window(g)
    M = g.dim
    J = max(1, round((1.0 - p) * M * M))
    lower = gabor_nerf_lower_bound(g, J)
    if lower <= 0:
        return math.inf
    # Subframes of the tight full frame keep B <= M
    return max(1.0, math.sqrt(M / lower))


def retained_count(p: float, N: int) -> int:
    return max(1, math.ceil((1.0 - p) * N - 1e-9))


def delta_p(
    g: Window,
    frame_set: FrameSet,
    p: float,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    mode: str = SAMPLE,
    threads: int = 1,
) -> float:
    """
    Smallest lower frame bound over subsets of the frame set keeping ceil((1-p)|Lambda|) points.

    Sample mode minimizes over `samples` uniform subsets; exhaustive mode visits all of them.
    """
    if not 0.0 <= p < 1.0:
        raise InvalidParameter(f"Erasure rate must lie in [0, 1), got {p}")
    phi = synthesize(g, frame_set)
    J = retained_count(p, phi.N)
    result = scan_subframes(phi, J, mode, samples, seed, orders=(), threads=threads)
    return result.min_lower_bound


def mub_table(
    M: int = 5,
    p_list: Optional[Sequence[float]] = None,
    threads: int = 1,
    solver: Optional[str] = None,
) -> List[NerfRow]:
    """
    Worst-case condition numbers and their estimates for the full Alltop frame.

    Every row enumerates all J-subframes exhaustively, J = round((1 - p) M^2).
    """
    phi, profile = alltop_mub_profile(M)
    rows = []
    for p in TABLE_P_LIST if p_list is None else p_list:
        J = round((1.0 - p) * phi.N)
        if J < 1:
            raise InvalidParameter(f"Erasure rate {p} leaves no vectors")
        scan = scan_subframes(phi, J, EXHAUSTIVE, orders=(1, 2), threads=threads, solver=solver)
        row = NerfRow(
            p=p,
            J=J,
            est_trace_m1=cond_from_delta(scan.max_delta[1]),
            est_trace_m2=cond_from_delta(scan.max_delta[2]),
            est_theoretical=mub_nerf_bound(p, profile.alpha),
            worst_cond=scan.worst_cond,
        )
        logger.info(f"p={p:.2f} J={J}: worst cond {row.worst_cond:.6f} over {scan.subsets} subframes")
        rows.append(row)
    return rows
