"""Dense complex linear algebra: cyclic Jacobi eigensolver, DFT matrix, trace powers."""
import logging
from typing import Optional, Tuple

import numpy as np

from config import EIGEN_SOLVER, EIGEN_TOL, HERMITIAN_TOL, JACOBI_MAX_DIM, JACOBI_MAX_SWEEPS
from gaborbench.models.eigen import HermitianEigenResult
from gaborbench.utils.exceptions import InvalidParameter, NoConvergence, NotHermitian, NumericalError

logger = logging.getLogger(__name__)

SOLVERS = ("auto", "jacobi", "lapack")


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a complex128 array of matrices, rejecting NaN/Inf entries."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim < 2:
        raise InvalidParameter(f"Expected a matrix, got an array with shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidParameter("Matrix has non-finite entries")
    return arr


def hermitian_deviation(a: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2)))))


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    if a.shape[-1] != a.shape[-2]:
        raise InvalidParameter(f"Matrix must be square, got shape {a.shape[-2:]}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    deviation = hermitian_deviation(a)
    if deviation > HERMITIAN_TOL * scale:
        raise NotHermitian(deviation)
    # Symmetrize so rounding noise does not leak into the rotations
    return 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))


def _off_diagonal_mass(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., mask]) ** 2, axis=-1))


def _rotate(a: np.ndarray, p: int, q: int, active: np.ndarray) -> None:
    """Apply one complex Jacobi rotation zeroing (p, q), in place; inactive matrices get the identity."""
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    apq = a[:, p, q]
    r = np.abs(apq)
    rotate = active & (r > 0.0)
    safe_r = np.where(rotate, r, 1.0)
    phase = np.where(rotate, apq / safe_r, 1.0)
    theta = (aqq - app) / (2.0 * safe_r)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(rotate, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    s_phase = (s * phase)[:, None]
    s_conj = (s * np.conj(phase))[:, None]
    c = c[:, None]

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q]
    a[:, :, p] = c * col_p - s_conj * col_q
    a[:, :, q] = s_phase * col_p + c * col_q

    row_p = a[:, p, :].copy()
    row_q = a[:, q, :]
    a[:, p, :] = c * row_p - s_phase * row_q
    a[:, q, :] = s_conj * row_p + c * row_q

    a[rotate, p, q] = 0.0
    a[rotate, q, p] = 0.0


def hermitian_eigenvalues_batch(
    stack,
    tol: float = EIGEN_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Cyclic Jacobi eigenvalues for a stack of Hermitian matrices.

    Both tolerances are scaled by the size of the input rather than applied as
    absolute values: the Hermitian check allows HERMITIAN_TOL * max(1, max|a_ij|)
    and a matrix counts as converged once its off-diagonal Frobenius mass is
    at most tol * max(1, ||A||_F). Rotations run in place over the whole stack;
    a converged matrix gets the identity rotation, so the result for one
    matrix does not depend on the others.

    Args:
        stack: Array of shape (..., n, n)
        tol: Relative convergence threshold on the off-diagonal Frobenius mass
        max_sweeps: Sweep budget

    Returns:
        (eigenvalues, residuals, sweeps): ascending eigenvalues of shape
        (..., n), the max off-diagonal magnitude of every matrix at
        convergence, and the number of sweeps run

    Raises:
        NotHermitian: If a matrix is not Hermitian within tolerance
        NoConvergence: If the sweep budget is exhausted
    """
    a = _check_hermitian(as_complex_matrix(stack))
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = np.array(a.reshape((-1, n, n)), copy=True)

    if n == 1:
        values = a[:, 0, 0].real.reshape(batch_shape + (1,))
        return values, np.zeros(batch_shape), 0

    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    thresholds = tol * np.maximum(1.0, np.linalg.norm(a, axis=(-2, -1)))

    sweep = 0
    while True:
        mass = _off_diagonal_mass(a)
        active = mass > thresholds
        if not active.any():
            break
        if sweep >= max_sweeps:
            raise NoConvergence(float(mass[active].max()), sweep)
        for p, q in pairs:
            _rotate(a, p, q, active)
        sweep += 1

    logger.debug(f"Jacobi converged in {sweep} sweeps for {a.shape[0]} matrices of size {n}")
    mask = ~np.eye(n, dtype=bool)
    residuals = np.max(np.abs(a[:, mask]), axis=-1)
    values = np.sort(np.diagonal(a, axis1=-2, axis2=-1).real, axis=-1)
    return values.reshape(batch_shape + (n,)), residuals.reshape(batch_shape), sweep


def hermitian_eigenvalues(a, tol: float = EIGEN_TOL) -> HermitianEigenResult:
    """Eigenvalues of one Hermitian matrix by cyclic Jacobi, sorted ascending."""
    matrix = as_complex_matrix(a)
    if matrix.ndim != 2:
        raise InvalidParameter(f"Expected a single matrix, got shape {matrix.shape}")
    values, residuals, sweeps = hermitian_eigenvalues_batch(matrix[None], tol=tol)
    return HermitianEigenResult(eigenvalues=values[0], residual=float(residuals[0]), sweeps=sweeps)


def eigvalsh(a, solver: Optional[str] = None) -> np.ndarray:
    """
    Ascending eigenvalues of a Hermitian matrix (or stack) with solver dispatch.

    "jacobi" always uses the cyclic Jacobi solver and "lapack" numpy's LAPACK
    driver. "auto" runs Jacobi on a single matrix up to JACOBI_MAX_DIM and
    hands larger matrices and stacks of matrices to LAPACK.
    """
    solver = solver or EIGEN_SOLVER
    if solver not in SOLVERS:
        raise InvalidParameter(f"Unknown eigensolver '{solver}', expected one of {SOLVERS}")
    matrix = as_complex_matrix(a)
    n = matrix.shape[-1]
    if solver == "jacobi" or (solver == "auto" and matrix.ndim == 2 and n <= JACOBI_MAX_DIM):
        values, _, _ = hermitian_eigenvalues_batch(matrix)
        return values
    return np.linalg.eigvalsh(_check_hermitian(matrix))


def dft_matrix(M: int) -> np.ndarray:
    """Normalized DFT matrix, entry (k, l) = exp(-2 pi i k l / M) / sqrt(M)."""
    if M < 1:
        raise InvalidParameter(f"DFT size must be positive, got {M}")
    idx = np.arange(M)
    # Reduce k*l mod M before scaling to keep the phases exact
    kl = np.outer(idx, idx) % M
    return np.exp(-2j * np.pi * kl / M) / np.sqrt(M)


def trace_power(a, m: int) -> float:
    """Tr(A^m) for Hermitian A by repeated multiplication."""
    values = trace_power_batch(a, m)
    return float(values) if np.ndim(values) == 0 else values


def trace_power_batch(a, m: int) -> np.ndarray:
    if m < 1:
        raise InvalidParameter(f"Trace power order must be positive, got {m}")
    matrix = _check_hermitian(as_complex_matrix(a))
    product = matrix
    for _ in range(m - 1):
        product = product @ matrix
    trace = np.trace(product, axis1=-2, axis2=-1)
    scale = np.maximum(1.0, np.abs(trace.real))
    if np.any(np.abs(trace.imag) > 1e-9 * scale):
        raise NumericalError(f"Trace of A^{m} has a non-negligible imaginary part")
    return trace.real
