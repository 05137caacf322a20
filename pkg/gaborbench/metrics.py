"""Frame bounds, coherence, frame potential and the centered frame operator."""
import math
from typing import Optional, Tuple

import numpy as np

from config import FRAME_TOL, TIGHT_TOL, UNIT_NORM_TOL
from gaborbench.linalg import eigvalsh, trace_power
from gaborbench.models.synthesis import SynthesisMatrix
from gaborbench.models.window import Window
from gaborbench.schemas.spectrum import SpectrumReport
from gaborbench.utils.exceptions import InvalidParameter, NotUnitNorm


def frame_operator(phi: SynthesisMatrix) -> np.ndarray:
    matrix = phi.matrix
    return matrix @ matrix.conj().T


def require_unit_norm(phi: SynthesisMatrix, tol: float = UNIT_NORM_TOL) -> None:
    deviation = float(np.max(np.abs(phi.column_norms() - 1.0))) if phi.N else 0.0
    if deviation > tol:
        raise NotUnitNorm(deviation)


def frame_bounds(phi: SynthesisMatrix, solver: Optional[str] = None) -> SpectrumReport:
    """
    Spectrum of the frame operator and the derived bounds.

    A and B are the extreme eigenvalues of Phi Phi*. When A <= FRAME_TOL the
    columns do not span: the report carries A = 0, is_frame=False and cond = inf.
    """
    eigenvalues = np.asarray(eigvalsh(frame_operator(phi), solver=solver), dtype=float)
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    is_frame = lower > FRAME_TOL
    if not is_frame:
        lower = 0.0
    return SpectrumReport(
        M=phi.M,
        N=phi.N,
        eigenvalues=eigenvalues.tolist(),
        lower_bound=lower,
        upper_bound=upper,
        cond=math.sqrt(upper / lower) if is_frame else math.inf,
        delta=float(np.max(np.abs(phi.M / phi.N * eigenvalues - 1.0))),
        is_frame=is_frame,
    )


def is_tight(report: SpectrumReport, tol: float = TIGHT_TOL) -> bool:
    return report.delta <= tol


def reconstruction_error_bound(phi: SynthesisMatrix) -> float:
    """Noise gain 1/A of reconstruction with the canonical dual frame."""
    report = frame_bounds(phi)
    return 1.0 / report.lower_bound if report.is_frame else math.inf


def gram_matrix(phi: SynthesisMatrix) -> np.ndarray:
    return phi.matrix.conj().T @ phi.matrix


def coherence(phi: SynthesisMatrix) -> float:
    require_unit_norm(phi)
    if phi.N < 2:
        return 0.0
    gram = np.abs(gram_matrix(phi))
    np.fill_diagonal(gram, 0.0)
    return float(gram.max())


def frame_potential(phi: SynthesisMatrix) -> float:
    return float(np.sum(np.abs(gram_matrix(phi)) ** 2))


def h_matrix(phi: SynthesisMatrix) -> np.ndarray:
    """H = Phi Phi* - (N/M) I."""
    return frame_operator(phi) - (phi.N / phi.M) * np.eye(phi.M)


def lower_bound_welch(phi: SynthesisMatrix) -> float:
    """N/M - (M-1)/(2M) - Tr(H^2)/2, a lower bound on A for unit-norm frames."""
    require_unit_norm(phi)
    M, N = phi.M, phi.N
    return N / M - (M - 1) / (2 * M) - 0.5 * trace_power(h_matrix(phi), 2)


def regular_set_bounds(g: Window, F) -> Tuple[float, float]:
    """
    Closed-form frame bounds of (g, F x Z_M).

    The frame operator is diagonal with entries M * ||g restricted to m - F||^2.
    """
    F = np.unique(np.asarray(list(F), dtype=np.int64))
    if F.size == 0:
        raise InvalidParameter("F must be nonempty")
    M = g.dim
    weights = np.abs(g.values) ** 2
    m = np.arange(M)[:, None]
    energies = weights[(m - F[None, :]) % M].sum(axis=1)
    return float(M * energies.min()), float(M * energies.max())


def trace_delta(phi: SynthesisMatrix, m: int) -> float:
    """((M/N)^(2m) Tr(H^(2m)))^(1/(2m)), which dominates max |(M/N) sigma^2 - 1|."""
    if m < 1:
        raise InvalidParameter(f"Trace order must be positive, got {m}")
    value = trace_power(h_matrix(phi), 2 * m)
    return float(((phi.M / phi.N) ** (2 * m) * max(value, 0.0)) ** (1.0 / (2 * m)))


def cond_from_delta(delta: float) -> float:
    if delta >= 1.0:
        return math.inf
    return math.sqrt((1.0 + delta) / (1.0 - delta))
