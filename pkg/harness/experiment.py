import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from tqdm import tqdm

from metrics import StreamErfMetrics, AverageMeter
from subspace import DEFAULT_M, DEFAULT_EPS
from utils import mix_seed
from utils.errors import ConfigError, InvalidInputError
from .report import ErfRow, ErfReport

logger = logging.getLogger(__name__)

BASELINE = 'MC'


def is_power_of_two(n):
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


@dataclass
class ExperimentConfig:
    """What to run: problem settings, methods and sample sizes.

    ``methods=None`` runs every method the problem family offers. MC is
    always added as the ERF baseline.
    """
    problems: Sequence = field(default_factory=list)
    methods: Optional[Sequence[str]] = None
    n: int = 2 ** 14
    reps: int = 50
    M: int = DEFAULT_M
    eps: float = DEFAULT_EPS
    base_seed: int = 0
    workers: int = 1
    progress: bool = False

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise ConfigError("n must be a power of 2, got %s" % self.n)
        if self.reps < 2:
            raise ConfigError("reps must be at least 2, got %s" % self.reps)
        if not is_power_of_two(self.M):
            raise ConfigError("M must be a power of 2, got %s" % self.M)
        if not self.eps > 0:
            raise ConfigError("eps must be positive, got %s" % self.eps)
        if self.workers < 1:
            raise ConfigError("workers must be at least 1, got %s" % self.workers)

    def methods_for(self, problem):
        wanted = problem.methods if self.methods is None else self.methods
        ordered = [BASELINE] + [m for m in wanted if m != BASELINE]
        return [m for i, m in enumerate(ordered) if m not in ordered[:i]]


def replicate_seed(base_seed, r, method):
    return mix_seed(base_seed, r, method)


def run_replicates(config, estimator, desc=None):
    """ Replicate means in replicate order; replicates may run concurrently. """
    seeds = [replicate_seed(config.base_seed, r, estimator.method) for r in range(config.reps)]
    work = lambda seed: estimator.replicate(config.n, seed)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        values = list(tqdm(pool.map(work, seeds), total=len(seeds), desc=desc,
                           disable=not config.progress, leave=False))
    return np.asarray(values, dtype=np.float64)


def _single_problem(config, problem):
    if problem is not None:
        return problem
    if len(config.problems) != 1:
        raise InvalidInputError("config holds %d problems, pass the one to run" % len(config.problems))
    return config.problems[0]


def _timed_replicates(config, problem, method, meter):
    estimator = problem.estimator(method, M=config.M, eps=config.eps, base_seed=config.base_seed)
    t0 = time.perf_counter()
    values = run_replicates(config, estimator, desc='%s %s' % (problem.name, method))
    elapsed = time.perf_counter() - t0
    logger.info("%r %s: setup %.3fs, replicates %.3fs", problem, method, estimator.setup_seconds, elapsed)
    if meter is not None:
        meter.update('%s/setup' % method, estimator.setup_seconds)
        meter.update('%s/run' % method, elapsed)
    return values


def run_estimator(config, method, problem=None, meter=None):
    """Mean of the replicate means and their standard error.

    C_hat and rotations are computed once before the replicates, from their
    own sub-seed. Setup and replicate seconds are added to ``meter`` under
    ``'<method>/setup'`` and ``'<method>/run'``.
    """
    problem = _single_problem(config, problem)
    return StreamErfMetrics.summarize(_timed_replicates(config, problem, method, meter))


def erf_table(config, meter=None):
    """ One row per (problem setting, method), the MC row first within each setting. """
    metrics = StreamErfMetrics(baseline=BASELINE)
    meter = AverageMeter() if meter is None else meter
    settings = []
    for problem in config.problems:
        logger.info("Problem: %r, n=%d, reps=%d", problem, config.n, config.reps)
        for method in config.methods_for(problem):
            metrics.extend(len(settings), method, _timed_replicates(config, problem, method, meter))
        settings.append(problem)
    for key in sorted(meter.book):
        logger.info("%s: %.3fs total, %.3fs per setting", key, meter.get_total(key), meter.get_results(key))

    results = metrics.get_results()
    logger.debug(metrics.to_str(results))
    rows = []
    for (i, method), res in results.items():
        problem = settings[i]
        rows.append(ErfRow(problem=problem.name, param_rho=problem.param_rho, param_K=problem.param_K,
                           method=method, mean=res['mean'], stderr=res['stderr'], erf=res['erf']))
    return ErfReport(rows=rows)


def cde_table(config):
    """-log2(MISE) per (setting, method) for density problems.

    Returns the report and the density estimates keyed by (setting index, method).
    """
    rows, estimates = [], {}
    for i, problem in enumerate(config.problems):
        logger.info("Problem: %r, n=%d, reps=%d", problem, config.n, config.reps)
        methods = problem.methods if config.methods is None else config.methods
        for method in methods:
            t0 = time.perf_counter()
            estimate = problem.density(method, n=config.n, reps=config.reps, M=config.M, eps=config.eps,
                                       base_seed=config.base_seed)
            logger.info("%r %s: %.3fs, -log2(MISE)=%.2f", problem, method,
                        time.perf_counter() - t0, estimate.neg_log2_mise)
            estimates[(i, method)] = estimate
            rows.append(ErfRow(problem=problem.name, param_rho=problem.param_rho, param_K=problem.param_K,
                               method=method, mean=estimate.neg_log2_mise, stderr=None, erf=None))
    return ErfReport(rows=rows), estimates
