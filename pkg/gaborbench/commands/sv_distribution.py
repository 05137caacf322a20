from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from dependencies import get_rng, logger
from gaborbench.commands.common import Table, add_common_arguments, add_dimension_arguments, add_window_argument
from gaborbench.gabor import make_frame_set, make_window, random_density, synthesize
from gaborbench.lambda_spec import parse_lambda
from gaborbench.metrics import frame_bounds
from gaborbench.models.window import WindowKind
from gaborbench.schemas.experiment import ExperimentConfig
from gaborbench.utils.exceptions import GaborBenchError, NumericalError

DEFAULT_DIMS = [100, 150, 200, 250, 300]
DEFAULT_C = 4.0
DEFAULT_TRIALS = 1000
# Normalized eigenvalues above this land in the last bin
HIST_MAX = 3.0

COLUMNS = ["M", "mean_A_norm", "mean_B_norm", "hist_bin", "hist_count"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("sv-distribution", help="normalized frame bounds and eigenvalue histogram")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    add_window_argument(parser, default="steinhaus")
    parser.add_argument("--lambda", dest="lambda_spec", help="frame set spec (default bernoulli with tau = min(1, C/M))")
    parser.add_argument("--C", type=float, help=f"constant in tau = C/M (default {DEFAULT_C})")
    parser.add_argument("--trials", type=int, help=f"random (g, Lambda) draws per M (default {DEFAULT_TRIALS})")
    parser.add_argument("--bins", type=int, default=50, help="histogram bins on [0, 3]")
    parser.set_defaults(handler=cmd_sv_distribution)


def _normalized_spectrum(
    config: ExperimentConfig, M: int, trial: int, spec: Optional[str], kind: WindowKind
) -> np.ndarray:
    rng = get_rng(config.seed, M, trial)
    if spec is None:
        # tau = C/M, capped at 1 for small M
        frame_set = make_frame_set("bernoulli", M, tau=random_density(M, config.C or DEFAULT_C), rng=rng)
    else:
        frame_set = parse_lambda(spec, M, rng)
    window = make_window(kind, M, seed=config.seed, rng=rng)
    report = frame_bounds(synthesize(window, frame_set), solver=config.solver)
    return np.asarray(report.eigenvalues) / (report.N / M)


def cmd_sv_distribution(config: ExperimentConfig) -> Table:
    try:
        kind = config.window or WindowKind.STEINHAUS
        trials = config.trials or DEFAULT_TRIALS
        spec = config.lambda_spec
        edges = np.linspace(0.0, HIST_MAX, config.bins + 1)
        rows = []
        for M in config.dims(DEFAULT_DIMS):
            def run(trial: int) -> np.ndarray:
                return _normalized_spectrum(config, M, trial, spec, kind)

            if config.threads > 1:
                with ThreadPoolExecutor(max_workers=config.threads) as pool:
                    spectra = list(pool.map(run, range(trials)))
            else:
                spectra = [run(trial) for trial in range(trials)]
            spectra = np.stack(spectra)
            mean_a = float(spectra[:, 0].mean())
            mean_b = float(spectra[:, -1].mean())
            counts, _ = np.histogram(np.clip(spectra.ravel(), 0.0, HIST_MAX), bins=edges)
            logger.info(f"M={M}: mean normalized A={mean_a:.4f}, B={mean_b:.4f} over {trials} trials")
            for left, count in zip(edges[:-1], counts):
                rows.append({
                    "M": M,
                    "mean_A_norm": mean_a,
                    "mean_B_norm": mean_b,
                    "hist_bin": float(left),
                    "hist_count": int(count),
                })
        return Table(rows=rows, columns=COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in sv-distribution: {str(e)}")
        raise NumericalError(f"sv-distribution failed: {e}")
