import math

from dependencies import logger
from gaborbench.commands.common import Table, add_common_arguments, add_dimension_arguments
from gaborbench.models.subset import SubsetOfZM
from gaborbench.models.window import WindowKind
from gaborbench.random_sets import (
    fourier_bias_concentration_check,
    gaussian_norm_check,
    hoeffding_cardinality_check,
    random_lambda_check,
    roots_of_unity_tail_check,
    structured_window_check,
    upper_bound_coverage_check,
)
from gaborbench.sampling import derive_seed
from gaborbench.schemas.experiment import ExperimentConfig, Lemma
from gaborbench.schemas.tail import TAIL_COLUMNS, TailCheckReport
from gaborbench.utils.exceptions import GaborBenchError, NumericalError

DEFAULT_TRIALS = 1000

# Dimension used when neither --M nor --M-range is given
DEFAULT_DIM = {
    Lemma.HOEFFDING: 32,
    Lemma.GAUSSIAN_NORM: 64,
    Lemma.ROOTS_OF_UNITY: 64,
    Lemma.STRUCTURED_GAUSSIAN: 128,
    Lemma.STRUCTURED_SPHERE: 128,
    Lemma.STEINHAUS_UPPER: 32,
    Lemma.RANDOM_LAMBDA: 64,
    Lemma.FOURIER_BIAS: 64,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("prob-checks", help="Monte-Carlo checks of tail bounds")
    add_common_arguments(parser)
    add_dimension_arguments(parser)
    parser.add_argument("--lemma", choices=[lemma.value for lemma in Lemma], required=True)
    parser.add_argument("--trials", type=int, help=f"trials per row (default {DEFAULT_TRIALS})")
    parser.add_argument("--tau", type=float, help="inclusion probability (default 0.5)")
    parser.add_argument("--t", type=float, help="relative deviation for hoeffding (default 0.1)")
    parser.add_argument("--C", type=float, help="constant C (roots-of-unity 8, random-lambda 4)")
    parser.add_argument("--eps", type=float, help="failure probability for steinhaus-upper (default 0.1)")
    parser.add_argument("--delta", type=float, help="relative deviation for random-lambda (default 0.5)")
    parser.add_argument("--m", type=int, help="moment order for random-lambda (default 4)")
    parser.add_argument("--F-size", type=int, help="|F| for structured checks (default ceil(20 log M))")
    parser.add_argument("--lam", type=float, help="lambda for fourier-bias (default 4)")
    parser.add_argument("--threshold", type=float, help="raw deviation threshold for fourier-bias")
    parser.set_defaults(handler=cmd_prob_checks)


def run_check(lemma: Lemma, config: ExperimentConfig, M: int, seed: int) -> TailCheckReport:
    trials = config.trials or DEFAULT_TRIALS
    tau = config.tau if config.tau is not None else 0.5
    threads = config.threads
    if lemma == Lemma.HOEFFDING:
        return hoeffding_cardinality_check(M, tau, config.t or 0.1, trials, seed, threads)
    if lemma == Lemma.GAUSSIAN_NORM:
        return gaussian_norm_check(M, trials, seed, threads)
    if lemma == Lemma.ROOTS_OF_UNITY:
        return roots_of_unity_tail_check(M, tau, config.C or 8.0, trials, seed, threads)
    if lemma in (Lemma.STRUCTURED_GAUSSIAN, Lemma.STRUCTURED_SPHERE):
        kind = WindowKind.GAUSSIAN if lemma == Lemma.STRUCTURED_GAUSSIAN else WindowKind.SPHERE
        size = min(M, config.F_size or math.ceil(20 * math.log(M)))
        return structured_window_check(kind, M, range(size), trials, seed, threads)
    if lemma == Lemma.STEINHAUS_UPPER:
        return upper_bound_coverage_check(M, tau, config.eps or 0.1, trials, seed, threads)
    if lemma == Lemma.RANDOM_LAMBDA:
        return random_lambda_check(M, config.m or 4, config.C or 4.0, config.delta or 0.5, trials, seed, threads)
    # Fourier bias of random subsets of the progression {0..M/2 - 1}
    base = SubsetOfZM.of(M, range(max(1, M // 2)))
    lam = config.lam or 4.0
    threshold = config.threshold or lam * math.sqrt(len(base) * tau * (1 - tau))
    return fourier_bias_concentration_check(base, tau, lam, threshold, trials, seed, threads)


def cmd_prob_checks(config: ExperimentConfig) -> Table:
    try:
        lemma = config.lemma
        rows = []
        for M in config.dims([DEFAULT_DIM[lemma]]):
            report = run_check(lemma, config, M, derive_seed(config.seed, M))
            rows.append(report.model_dump())
        return Table(rows=rows, columns=TAIL_COLUMNS)
    except GaborBenchError:
        raise
    except Exception as e:
        logger.error(f"Error in prob-checks: {str(e)}")
        raise NumericalError(f"prob-checks failed: {e}")
