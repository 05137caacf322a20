class GaborBenchError(Exception):
    """Base error; `exit_code` is what the CLI returns when it escapes a command."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(GaborBenchError):
    exit_code = 2


class NumericalError(GaborBenchError):
    exit_code = 3


class ResourceGuardError(GaborBenchError):
    exit_code = 4


class InvalidParameter(ConfigError):
    pass


class AlltopRequiresPrime(ConfigError):
    def __init__(self, dim: int):
        super().__init__(f"Alltop window requires a prime dimension >= 5, got M={dim}")
        self.dim = dim


class DimensionMismatch(ConfigError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class NotHermitian(NumericalError):
    def __init__(self, deviation: float):
        super().__init__(f"Matrix is not Hermitian (max |A - A*| = {deviation:.3e})")
        self.deviation = deviation


class NoConvergence(NumericalError):
    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"Jacobi iteration did not converge in {sweeps} sweeps (residual {residual:.3e})"
        )
        self.residual = residual
        self.sweeps = sweeps


class NotUnitNorm(NumericalError):
    def __init__(self, deviation: float):
        super().__init__(f"Frame vectors are not unit-norm (max deviation {deviation:.3e})")
        self.deviation = deviation


class EmptyFrameSet(NumericalError):
    def __init__(self, dim: int):
        super().__init__(f"Frame set in dimension M={dim} is empty")
        self.dim = dim


class NotOrthonormalBasis(NumericalError):
    def __init__(self, basis: int, deviation: float):
        super().__init__(f"Basis {basis} is not orthonormal (deviation {deviation:.3e})")
        self.basis = basis
        self.deviation = deviation


class CoherenceExceeded(NumericalError):
    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"Bases {i} and {j} are not mutually unbiased (|inner| = {value:.6f})")
        self.i = i
        self.j = j
        self.value = value


class SubsetTooLarge(ResourceGuardError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"Exhaustive enumeration of {count} subsets exceeds the limit of {limit}")
        self.count = count
        self.limit = limit


class TooManyTerms(ResourceGuardError):
    def __init__(self, count: int, limit: int):
        super().__init__(f"Combinatorial sum has {count} terms, limit is {limit}")
        self.count = count
        self.limit = limit


class MTooLarge(ResourceGuardError):
    def __init__(self, order: int, limit: int):
        super().__init__(f"Permutation search of order {order} exceeds the limit of {limit}")
        self.order = order
        self.limit = limit
