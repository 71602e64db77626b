import csv
import logging
import os
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from linalg import PathConstruction, cholesky, reversed_cholesky
from models import lognormal_sum
from preint import lognormal_conditional
from rqmc import rqmc_normals
from subspace import estimate_C, constrained_rotation, SignPattern, DEFAULT_M, DEFAULT_EPS
from utils import mix_seed, mkdir
from utils.errors import InvalidInputError, UnknownConstructionError

logger = logging.getLogger(__name__)

# -log2 of the smallest subnormal double; reported when the MISE is exactly 0
MISE_CAP = 1074.0
CDE_METHODS = ('direct', 'cas')


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    grid: np.ndarray
    curves: np.ndarray

    @property
    def mean(self):
        return self.curves.mean(axis=0)

    @property
    def variance(self):
        return self.curves.var(axis=0, ddof=1)

    @property
    def mise(self):
        return mise(self.curves, self.grid)

    @property
    def neg_log2_mise(self):
        return neg_log2(self.mise)


def default_grid(points=200, lo=0.1, hi=50.0):
    return np.linspace(lo, hi, points)


def cde_curve(spec, R, grid, n, seed, warm_start=True):
    """ Conditional density estimate on ``grid`` from n scrambled Sobol' points. """
    grid = np.asarray(grid, dtype=np.float64)
    if np.any(np.diff(grid) <= 0):
        raise InvalidInputError("grid must be strictly increasing")
    y_rest = rqmc_normals(n, spec.d - 1, seed).values if spec.d > 1 else np.zeros((n, 0))
    curve = np.empty(grid.size)
    guess = None
    for i, x in enumerate(grid):
        _, dens, y_star = lognormal_conditional(spec, R, x, y_rest, guess=guess, return_root=True)
        curve[i] = dens.mean()
        if warm_start:
            guess = np.where(np.isfinite(y_star), y_star, np.nan)
    return curve


def mise(curves, grid):
    """ Integrated across-replicate variance; equals the MISE of an unbiased estimator. """
    curves = np.atleast_2d(curves)
    if curves.shape[0] < 2:
        raise InvalidInputError("MISE needs at least 2 replicates, got %d" % curves.shape[0])
    return float(trapezoid(curves.var(axis=0, ddof=1), grid))


def neg_log2(value, cap=MISE_CAP):
    if value <= 0:
        return cap
    return min(-np.log2(value), cap)


def cde_construction(spec, method, M=DEFAULT_M, eps=DEFAULT_EPS, seed=0):
    """R for the density estimator.

    ``direct`` hides the first log-normal term (factor of the reversed order,
    first column (R_11, 0, ..., 0)). ``cas`` rotates the Cholesky factor so
    that R_0 u1 >= 0 along the most important direction of h.
    """
    Sigma = np.asarray(spec.Sigma, dtype=np.float64)
    if method == 'direct':
        return PathConstruction(R=reversed_cholesky(Sigma), kind='cholesky', Sigma=Sigma)
    if method == 'cas':
        R0 = cholesky(Sigma)
        C = estimate_C(lambda Y: lognormal_sum(spec, R0, Y), spec.d, M=M, seed=seed, eps=eps)
        rot = constrained_rotation(C, SignPattern(R0=R0, signs=np.ones(spec.d, dtype=int)))
        return PathConstruction(R=R0, kind='cholesky', Sigma=Sigma).rotate(rot.U)
    raise UnknownConstructionError("unknown density method '%s'" % method)


def cde_replicates(spec, R, grid, n, reps, base_seed, tag):
    curves = np.vstack([cde_curve(spec, R, grid, n, mix_seed(base_seed, r, tag)) for r in range(reps)])
    return DensityEstimate(grid=np.asarray(grid, dtype=np.float64), curves=curves)


def write_curves(estimate, path):
    """ Columns x, mean_density, var_density. """
    mkdir(os.path.dirname(path))
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['x', 'mean_density', 'var_density'])
        for x, m, v in zip(estimate.grid, estimate.mean, estimate.variance):
            writer.writerow(['%.17g' % x, '%.17g' % m, '%.17g' % v])
    logger.info("density curve written to %s", path)
