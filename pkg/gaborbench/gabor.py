"""Windows, time-frequency shifts, frame sets and Gabor synthesis matrices."""
import logging
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from gaborbench.linalg import dft_matrix
from gaborbench.models.frame_set import FrameSet
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import Window, WindowKind
from gaborbench.sampling import make_rng, require_seed
from gaborbench.schemas.payloads import FrameSetPayload, WindowPayload
from gaborbench.utils.exceptions import (
    AlltopRequiresPrime,
    DimensionMismatch,
    EmptyFrameSet,
    InvalidParameter,
)

logger = logging.getLogger(__name__)

TIME = "time"
FREQUENCY = "frequency"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# Windows

def draw_windows(kind: WindowKind, M: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw `count` random windows of one kind as a (count, M) array."""
    if M < 1:
        raise InvalidParameter(f"Window dimension must be positive, got {M}")
    if kind == WindowKind.STEINHAUS:
        y = rng.random((count, M))
        return np.exp(2j * np.pi * y) / np.sqrt(M)
    if kind in (WindowKind.GAUSSIAN, WindowKind.SPHERE):
        re = rng.standard_normal((count, M))
        im = rng.standard_normal((count, M))
        values = (re + 1j * im) * np.sqrt(1.0 / (2 * M))
        if kind == WindowKind.SPHERE:
            values /= np.linalg.norm(values, axis=1, keepdims=True)
        return values
    raise InvalidParameter(f"Window kind '{kind.value}' is not random")


def alltop_window(M: int) -> Window:
    if M < 5 or not is_prime(M):
        raise AlltopRequiresPrime(M)
    j = np.arange(M)
    return Window(dim=M, values=np.exp(2j * np.pi * (j ** 3 % M) / M) / np.sqrt(M), kind=WindowKind.ALLTOP)


def make_window(
    kind: WindowKind,
    M: int,
    seed: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> Window:
    """
    Build a window of the given kind.

    Random kinds draw from `rng` when given, otherwise from a generator seeded
    with `seed`; the same (kind, M, seed) always gives the same values.

    Raises:
        AlltopRequiresPrime: For an Alltop window with M not a prime >= 5
        InvalidParameter: For a random kind without seed or generator
    """
    kind = WindowKind(kind)
    if kind == WindowKind.ALLTOP:
        return alltop_window(M)
    if kind == WindowKind.CUSTOM:
        raise InvalidParameter("Custom windows are built with custom_window(values)")
    if rng is None:
        rng = make_rng(require_seed(seed, f"a {kind.value} window"))
    values = draw_windows(kind, M, 1, rng)[0]
    return Window(dim=M, values=values, kind=kind, seed=seed)


def custom_window(values: Sequence[complex]) -> Window:
    values = np.asarray(values, dtype=np.complex128).reshape(-1)
    return Window(dim=values.shape[0], values=values, kind=WindowKind.CUSTOM)


def fourier_transform_window(g: Window) -> Window:
    """F_M g as a custom window."""
    return Window(dim=g.dim, values=dft_matrix(g.dim) @ g.values, kind=WindowKind.CUSTOM)


def window_to_payload(g: Window) -> WindowPayload:
    return WindowPayload(
        M=g.dim,
        kind=g.kind,
        seed=g.seed,
        re=[float(v) for v in g.values.real],
        im=[float(v) for v in g.values.imag],
    )


def window_from_payload(payload: WindowPayload) -> Window:
    values = np.asarray(payload.re) + 1j * np.asarray(payload.im)
    return Window(dim=payload.M, values=values, kind=payload.kind, seed=payload.seed)


# Time-frequency shifts

def tf_shift(x, k: int, l: int) -> np.ndarray:
    """pi(k, l) x: translate by k, then modulate by exp(2 pi i l j / M)."""
    x = np.asarray(x, dtype=np.complex128)
    M = x.shape[-1]
    j = np.arange(M)
    phase = np.exp(2j * np.pi * ((l * j) % M) / M)
    return phase * np.roll(x, k, axis=-1)


def tf_shift_operator(k: int, l: int, M: int) -> np.ndarray:
    """Matrix of pi(k, l) on C^M."""
    return tf_shift(np.eye(M, dtype=np.complex128).T, k, l).T


def composition_phase(lam: Tuple[int, int], mu: Tuple[int, int], M: int) -> complex:
    """c with pi(lam) pi(mu) = c * pi(lam + mu); expanding M_l T_k gives exp(-2 pi i k l' / M)."""
    k, _ = lam
    _, l2 = mu
    return complex(np.exp(-2j * np.pi * ((k * l2) % M) / M))


# Frame sets

def full_set(M: int) -> FrameSet:
    k, l = np.meshgrid(np.arange(M), np.arange(M), indexing="ij")
    return FrameSet(dim=M, points=np.stack([k.ravel(), l.ravel()], axis=1))


def product_set(
    F: Iterable[int],
    M: int,
    side: str = TIME,
    other: Optional[Iterable[int]] = None,
) -> FrameSet:
    """
    F x G on the time side or G x F on the frequency side.

    G defaults to Z_M; passing `other` gives the localized products F x {0..M/2}.
    """
    F = sorted(set(int(v) for v in F))
    if not F:
        raise InvalidParameter("Product set needs a nonempty F")
    G = list(range(M)) if other is None else sorted(set(int(v) for v in other))
    if not G:
        raise InvalidParameter("Product set needs a nonempty second factor")
    if side == TIME:
        pairs = [(a, b) for a in F for b in G]
    elif side == FREQUENCY:
        pairs = [(b, a) for b in G for a in F]
    else:
        raise InvalidParameter(f"Product side must be '{TIME}' or '{FREQUENCY}', got '{side}'")
    return FrameSet.from_pairs(M, pairs)


def explicit_set(M: int, pairs: Iterable[Tuple[int, int]]) -> FrameSet:
    frame_set = FrameSet.from_pairs(M, pairs)
    if frame_set.cardinality() == 0:
        raise EmptyFrameSet(M)
    return frame_set


def bernoulli_set(
    M: int,
    tau: float,
    seed: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> FrameSet:
    """Each (k, l) kept independently with probability tau, one uniform draw per point in row-major order."""
    if not 0.0 < tau <= 1.0:
        raise InvalidParameter(f"Inclusion probability must lie in (0, 1], got {tau}")
    if rng is None:
        rng = make_rng(require_seed(seed, "a Bernoulli frame set"))
    mask = rng.random((M, M)) < tau
    if not mask.any():
        raise EmptyFrameSet(M)
    return FrameSet(dim=M, points=np.argwhere(mask))


def make_frame_set(
    kind: str,
    M: int,
    F: Optional[Iterable[int]] = None,
    side: str = TIME,
    pairs: Optional[Iterable[Tuple[int, int]]] = None,
    tau: Optional[float] = None,
    seed: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> FrameSet:
    """
    Build a frame set of one of the kinds full, product, explicit or bernoulli.

    Args:
        kind: "full", "product", "explicit" or "bernoulli"
        M: Dimension
        F: Index set of a product set
        side: TIME for F x Z_M, FREQUENCY for Z_M x F
        pairs: Points of an explicit set
        tau: Inclusion probability of a Bernoulli set
        seed: Seed of a Bernoulli set when no generator is given
        rng: Generator for a Bernoulli set

    Returns:
        FrameSet: The requested set, sorted lexicographically

    Raises:
        InvalidParameter: For an unknown kind or missing parameters
        EmptyFrameSet: When an explicit or Bernoulli set comes out empty
    """
    if kind == "full":
        return full_set(M)
    if kind == "product":
        if F is None:
            raise InvalidParameter("A product set needs F")
        return product_set(F, M, side)
    if kind == "explicit":
        return explicit_set(M, pairs or [])
    if kind == "bernoulli":
        if tau is None:
            raise InvalidParameter("A Bernoulli set needs tau")
        return bernoulli_set(M, tau, seed=seed, rng=rng)
    raise InvalidParameter(f"Unknown frame set kind '{kind}'")


def random_density(M: int, C: float, m: Optional[int] = None) -> float:
    """C log M / M^((m-1)/m) for a moment order m, or C / M without one; capped at 1."""
    if m is None:
        tau = C / M
    else:
        tau = C * np.log(M) / M ** ((m - 1) / m)
    return float(min(1.0, tau))


def fourier_dual_set(frame_set: FrameSet) -> FrameSet:
    """{(l, -k mod M) : (k, l) in the set}."""
    M = frame_set.dim
    k, l = frame_set.points[:, 0], frame_set.points[:, 1]
    return FrameSet(dim=M, points=np.stack([l, (M - k) % M], axis=1))


def frame_set_to_payload(frame_set: FrameSet) -> FrameSetPayload:
    return FrameSetPayload(M=frame_set.dim, points=frame_set.pairs())


def frame_set_from_payload(payload: FrameSetPayload) -> FrameSet:
    return explicit_set(payload.M, payload.points)


# Synthesis

def _shift_tables(frame_set: FrameSet):
    M = frame_set.dim
    j = np.arange(M)[:, None]
    k = frame_set.points[:, 0][None, :]
    l = frame_set.points[:, 1][None, :]
    idx = (j - k) % M
    phase = np.exp(2j * np.pi * ((j * l) % M) / M)
    return idx, phase


def synthesize(g: Window, frame_set: FrameSet) -> SynthesisMatrix:
    """Columns pi(k, l) g in lexicographic (k, l) order."""
    if g.dim != frame_set.dim:
        raise DimensionMismatch(frame_set.dim, g.dim)
    idx, phase = _shift_tables(frame_set)
    return SynthesisMatrix(matrix=phase * g.values[idx], column_labels=frame_set.points)


def synthesize_batch(windows: np.ndarray, frame_set: FrameSet) -> np.ndarray:
    """(S, M, N) stack of synthesis matrices for S windows sharing one frame set."""
    windows = np.asarray(windows, dtype=np.complex128)
    if windows.ndim != 2 or windows.shape[1] != frame_set.dim:
        raise DimensionMismatch(frame_set.dim, windows.shape[-1])
    idx, phase = _shift_tables(frame_set)
    return phase[None, :, :] * windows[:, idx]


def standard_basis_frame(M: int) -> SynthesisMatrix:
    return SynthesisMatrix(matrix=np.eye(M, dtype=np.complex128))


def concat(first: SynthesisMatrix, second: SynthesisMatrix) -> SynthesisMatrix:
    if first.M != second.M:
        raise DimensionMismatch(first.M, second.M)
    return SynthesisMatrix(matrix=np.concatenate([first.matrix, second.matrix], axis=1))
