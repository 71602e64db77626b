import logging

import numpy as np

from cde import CDE_METHODS, cde_construction, cde_replicates, default_grid
from models import modeling
from utils import mix_seed
from utils.errors import IncompatibleMethodError
from .base import Problem

logger = logging.getLogger(__name__)


class CdeProblem(Problem):
    """Density of a sum of correlated log-normals on a fixed grid.

    Reported by -log2(MISE) over replicate curves rather than by a mean.
    """
    name = 'cde'
    methods = CDE_METHODS

    def __init__(self, spec, grid=None):
        self.spec = spec
        self.grid = default_grid() if grid is None else np.asarray(grid, dtype=np.float64)
        Sigma = np.asarray(spec.Sigma)
        self.param_rho = float(Sigma[0, 1]) if spec.d > 1 else None

    @property
    def s(self):
        return self.spec.d

    def estimator(self, method, M=256, eps=1e-6, base_seed=0):
        raise IncompatibleMethodError("%s is a density problem, use density()" % self.name)

    def density(self, method, n, reps, M=256, eps=1e-6, base_seed=0):
        if method not in self.methods:
            raise IncompatibleMethodError("method %s is not available for %s (choose from %s)"
                                          % (method, self.name, ', '.join(self.methods)))
        R = cde_construction(self.spec, method, M=M, eps=eps, seed=mix_seed(base_seed, 'gradient', method))
        return cde_replicates(self.spec, R, self.grid, n, reps, base_seed, method)

    @classmethod
    def settings(cls, rhos=modeling.CDE_RHOS, grid=None, **kwargs):
        return [cls(modeling.lognormal_autocorr(rho=rho, **kwargs), grid) for rho in rhos]
