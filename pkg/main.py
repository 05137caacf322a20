import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import LOG_LEVEL
from dependencies import resolve_solver, resolve_threads
from gaborbench.commands import COMMANDS
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.utils.exceptions import ConfigError, GaborBenchError
from storage import save_rows

logger = logging.getLogger(__name__)

# Parsed arguments that are not configuration fields
_CONTROL_KEYS = {"handler", "verbose"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaborbench",
        description="Frame bounds, trace moments and erasure robustness of Gabor and MUB frames",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    # Mount commands
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key not in _CONTROL_KEYS and value is not None
    }
    values["threads"] = resolve_threads(args.threads)
    values["solver"] = resolve_solver(args.solver)
    return ExperimentConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )

    try:
        config = build_config(args)
        table = args.handler(config)
        save_rows(table.rows, table.columns, config.out, config.format, config.full_precision)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ConfigError.exit_code
    except GaborBenchError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return ConfigError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
