from dependencies import get_rng, logger
from gaborbench.commands.common import Table, add_common_arguments, add_dimension_arguments, add_window_argument
from gaborbench.gabor import make_window, synthesize
from gaborbench.lambda_spec import parse_lambda
from gaborbench.metrics import frame_bounds
from gaborbench.models.window import WindowKind
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.schemas.spectrum import SPECTRUM_COLUMNS
from gaborbench.utils.exceptions import GaborBenchError, NumericalError


def register(subparsers) -> None:
    parser = subparsers.add_parser("frame-bounds", help="frame bounds of a Gabor frame")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    add_window_argument(parser, default="steinhaus")
    parser.add_argument("--lambda", dest="lambda_spec", default="full",
                        help="full | product:F=<list>:{time|freq} | bernoulli:tau=<expr> | file=<path>")
    parser.set_defaults(handler=cmd_frame_bounds)


def cmd_frame_bounds(config: ExperimentConfig) -> Table:
    """One spectrum row per dimension; the frame set is drawn before the window."""
    try:
        kind = config.window or WindowKind.STEINHAUS
        rows = []
        for M in config.dims([16]):
            rng = get_rng(config.seed, M) if config.seed is not None else None
            frame_set = parse_lambda(config.lambda_spec or "full", M, rng)
            window = make_window(kind, M, seed=config.seed, rng=rng)
            report = frame_bounds(synthesize(window, frame_set), solver=config.solver)
            logger.info(f"M={M} |Lambda|={report.N}: A={report.lower_bound:.6f} B={report.upper_bound:.6f}")
            rows.append(report.csv_row())
        return Table(rows=rows, columns=SPECTRUM_COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in frame-bounds: {str(e)}")
        raise NumericalError(f"frame-bounds failed: {e}")
