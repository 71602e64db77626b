import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from rqmc import mc_normals, rqmc_normals
from utils import mix_seed
from utils.errors import IncompatibleMethodError

logger = logging.getLogger(__name__)

METHODS = ('MC', 'RQMC_STD', 'RQMC_PCA', 'RQMC_AS', 'PRE_STD', 'PRE_PCA', 'PRE_CAS', 'PRE_AS')
FINANCE_METHODS = ('MC', 'RQMC_STD', 'RQMC_PCA', 'RQMC_AS', 'PRE_STD', 'PRE_PCA', 'PRE_CAS')
CLE_METHODS = ('MC', 'RQMC_STD', 'RQMC_AS', 'PRE_STD', 'PRE_AS')


@dataclass(frozen=True, eq=False)
class Estimator:
    """One ready-to-run estimator: integrand on N(0, I) inputs plus sampler.

    ``s`` is the dimension of the problem. A pre-integrated integrand has
    already integrated out the first input, so it takes the remaining s - 1
    inputs and is fed the first s - 1 dimensions of the point set.
    ``setup_seconds`` is the time spent on C_hat and rotations.
    """
    method: str
    f: Callable = field(repr=False)
    s: int
    scale: float = 1.0
    setup_seconds: float = 0.0
    preintegrated: bool = False

    @property
    def sampler(self):
        return 'mc' if self.method == 'MC' else 'rqmc'

    @property
    def dim(self):
        return self.s - 1 if self.preintegrated else self.s

    def sample(self, n, seed):
        if self.dim == 0:
            return np.zeros((n, 0))
        if self.sampler == 'mc':
            return mc_normals(n, self.dim, seed).values
        return rqmc_normals(n, self.dim, seed).values

    def replicate(self, n, seed):
        return self.scale * float(np.mean(self.f(self.sample(n, seed))))


class Problem(object):
    """Base class of the experiment families.

    Subclasses set ``name`` and ``methods`` and implement ``_build`` which
    maps a method tag to (integrand, discount scale).
    """
    name = None
    methods = ()

    param_rho = None
    param_K = None

    @property
    def s(self):
        raise NotImplementedError()

    def _build(self, method, M, eps, seed):
        """ Overridden by subclasses """
        raise NotImplementedError()

    def estimator(self, method, M=256, eps=1e-6, base_seed=0):
        if method not in self.methods:
            raise IncompatibleMethodError("method %s is not available for %s (choose from %s)"
                                          % (method, self.name, ', '.join(self.methods)))
        t0 = time.perf_counter()
        f, scale = self._build(method, M, eps, mix_seed(base_seed, 'gradient', method))
        setup = time.perf_counter() - t0
        logger.debug("%s %s: setup %.3fs", self.name, method, setup)
        return Estimator(method=method, f=f, s=self.s, scale=scale, setup_seconds=setup,
                         preintegrated=method.startswith('PRE_'))

    def __repr__(self):
        return "%s(rho=%s, K=%s)" % (self.name, self.param_rho, self.param_K)
