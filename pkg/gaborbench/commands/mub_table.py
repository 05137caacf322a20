from dependencies import logger
from gaborbench.commands.common import Table, add_common_arguments, parse_float_list
from gaborbench.erasures import TABLE_P_LIST, mub_table
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.schemas.nerf import NERF_COLUMNS
from gaborbench.utils.exceptions import GaborBenchError, NumericalError


def register(subparsers) -> None:
    parser = subparsers.add_parser("mub-table", help="worst-case subframe condition numbers of the Alltop frame")
    add_common_arguments(parser)
    parser.add_argument("--M", type=int, default=5, help="prime dimension (default 5)")
    parser.add_argument("--p-list", type=parse_float_list, help="erasure rates (default 0.00..0.68 step 0.04)")
    parser.set_defaults(handler=cmd_mub_table)


def cmd_mub_table(config: ExperimentConfig) -> Table:
    try:
        M = config.M or 5
        p_list = config.p_list or TABLE_P_LIST
        logger.info(f"Building the erasure table for M={M} over {len(p_list)} rates with {config.threads} threads")
        rows = mub_table(M, p_list, threads=config.threads, solver=config.solver)
        return Table(rows=[row.model_dump() for row in rows], columns=NERF_COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in mub-table: {str(e)}")
        raise NumericalError(f"mub-table failed: {e}")
