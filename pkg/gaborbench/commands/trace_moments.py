from dependencies import get_rng, logger
from gaborbench.commands.common import (
    Table,
    add_common_arguments,
    add_dimension_arguments,
    add_window_argument,
    parse_int_list,
)
from gaborbench.lambda_spec import parse_lambda
from gaborbench.models.window import WindowKind
from gaborbench.moments import mc_trace_moments
from gaborbench.sampling import derive_seed
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.schemas.moments import TRACE_MOMENT_COLUMNS
from gaborbench.utils.exceptions import GaborBenchError, NumericalError

DEFAULT_DIMS = [16]
DEFAULT_ORDERS = [2, 4]
DEFAULT_SAMPLES = 1000


def register(subparsers) -> None:
    parser = subparsers.add_parser("trace-moments", help="Monte-Carlo trace moments E Tr H^m for one frame set")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    add_window_argument(parser, default="steinhaus")
    parser.add_argument("--lambda", dest="lambda_spec", default="full", help="frame set spec (default full)")
    parser.add_argument("--orders", type=parse_int_list, help="moment orders (default 2,4)")
    parser.add_argument("--samples", type=int, help=f"windows per dimension (default {DEFAULT_SAMPLES})")
    parser.set_defaults(handler=cmd_trace_moments)


def cmd_trace_moments(config: ExperimentConfig) -> Table:
    """One row per (M, m); the frame set is drawn once per M and shared by every order."""
    try:
        kind = config.window or WindowKind.STEINHAUS
        orders = config.orders or DEFAULT_ORDERS
        samples = config.samples or DEFAULT_SAMPLES
        rows = []
        for M in config.dims(DEFAULT_DIMS):
            frame_set = parse_lambda(config.lambda_spec or "full", M, get_rng(config.seed, M, 0))
            estimates = mc_trace_moments(
                kind, frame_set, orders, samples, derive_seed(config.seed, M, 1), config.threads
            )
            for estimate in estimates:
                logger.info(f"M={M} m={estimate.m}: E Tr H^m = {estimate.mean:.6f} +- {estimate.std_error:.6f}")
                rows.append(estimate.csv_row())
        return Table(rows=rows, columns=TRACE_MOMENT_COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in trace-moments: {str(e)}")
        raise NumericalError(f"trace-moments failed: {e}")
