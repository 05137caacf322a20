from dependencies import get_rng, logger
from gaborbench.commands.common import Table, add_common_arguments, add_dimension_arguments, add_window_argument
from gaborbench.erasures import SAMPLE, delta_p
from gaborbench.gabor import TIME, make_window, product_set
from gaborbench.models.window import WindowKind
from gaborbench.sampling import derive_seed
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.utils.exceptions import GaborBenchError, InvalidParameter, NumericalError

DEFAULT_DIMS = list(range(20, 61, 5))
DEFAULT_F_SIZE = 5
DEFAULT_P = 1.0 / 3.0
DEFAULT_SAMPLES = 1000

COLUMNS = ["M", "delta_p"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("delta-p", help="smallest lower frame bound after erasing a fraction p")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    add_window_argument(parser, default="sphere")
    parser.add_argument("--F-size", type=int, help=f"|F| in Lambda = F x Z_M (default {DEFAULT_F_SIZE})")
    parser.add_argument("--p", type=float, help="erasure rate (default 1/3)")
    parser.add_argument("--samples", type=int, help=f"sampled subsets per M (default {DEFAULT_SAMPLES})")
    parser.set_defaults(handler=cmd_delta_p)


def cmd_delta_p(config: ExperimentConfig) -> Table:
    try:
        kind = config.window or WindowKind.SPHERE
        size = config.F_size or DEFAULT_F_SIZE
        p = DEFAULT_P if config.p is None else config.p
        samples = config.samples or DEFAULT_SAMPLES
        rows = []
        for M in config.dims(DEFAULT_DIMS):
            if size > M:
                raise InvalidParameter(f"|F|={size} exceeds M={M}")
            window = make_window(kind, M, seed=config.seed, rng=get_rng(config.seed, M))
            frame_set = product_set(range(size), M, TIME)
            value = delta_p(window, frame_set, p, samples, derive_seed(config.seed, M, 1), SAMPLE, config.threads)
            logger.info(f"M={M}: Delta({p:.4f}) = {value:.6f}")
            rows.append({"M": M, "delta_p": value})
        return Table(rows=rows, columns=COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in delta-p: {str(e)}")
        raise NumericalError(f"delta-p failed: {e}")
