from dependencies import logger
from gaborbench.commands.common import Table, add_common_arguments, add_dimension_arguments, parse_float_list
from gaborbench.gabor import TIME, product_set, random_density
from gaborbench.models.window import WindowKind
from gaborbench.moments import mc_trace_moment, random_set_trace_moment
from gaborbench.sampling import derive_seed
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.schemas.moments import Normalization
from gaborbench.utils.exceptions import GaborBenchError, InvalidParameter, NumericalError

DEFAULT_DIMS = [100, 150, 200]
DEFAULT_C_LIST = [1.0, 2.0, 3.0, 4.0]
DEFAULT_M = 4
DEFAULT_SAMPLES = 20

BERNOULLI = "bernoulli"
PRODUCT = "product"

COLUMNS = ["M", "C", "mode", "normalized_trace"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("trace-heatmap", help="normalized trace moments over a grid of (M, C)")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    parser.add_argument("--C-list", type=parse_float_list, help="values of C (default 1,2,3,4)")
    parser.add_argument("--m", type=int, help=f"even moment order (default {DEFAULT_M})")
    parser.add_argument("--samples", type=int, help=f"windows per cell (default {DEFAULT_SAMPLES})")
    parser.set_defaults(handler=cmd_trace_heatmap)


def localized_product(M: int, C: float):
    """F x {0..M/2} with |F| = 2C, the worst-case localized set."""
    size = int(round(2 * C))
    if not 1 <= size <= M:
        raise InvalidParameter(f"|F| = 2C = {size} does not fit in M={M}")
    return product_set(range(size), M, TIME, other=range(M // 2 + 1))


def cmd_trace_heatmap(config: ExperimentConfig) -> Table:
    """Rows (M, C, mode, (M/|Lambda|)^m E Tr H^m) for Bernoulli tau = C/M and for the localized product set."""
    try:
        m = config.m or DEFAULT_M
        if m % 2:
            raise InvalidParameter(f"Moment order must be even, got {m}")
        samples = config.samples or DEFAULT_SAMPLES
        rows = []
        for M in config.dims(DEFAULT_DIMS):
            for c_index, C in enumerate(config.C_list or DEFAULT_C_LIST):
                bernoulli, _ = random_set_trace_moment(
                    M, random_density(M, C), m, samples,
                    derive_seed(config.seed, M, c_index, 0), config.threads,
                )
                product = mc_trace_moment(
                    WindowKind.STEINHAUS, localized_product(M, C), m, max(2, samples),
                    derive_seed(config.seed, M, c_index, 1), config.threads, Normalization.NORMALIZED,
                ).value
                logger.info(f"M={M} C={C}: bernoulli {bernoulli:.6f}, product {product:.6f}")
                rows.append({"M": M, "C": float(C), "mode": BERNOULLI, "normalized_trace": bernoulli})
                rows.append({"M": M, "C": float(C), "mode": PRODUCT, "normalized_trace": product})
        return Table(rows=rows, columns=COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in trace-heatmap: {str(e)}")
        raise NumericalError(f"trace-heatmap failed: {e}")
