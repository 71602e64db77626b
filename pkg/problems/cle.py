import logging

import numpy as np

from models import cle_indicator, cle_smoothed, modeling
from preint import preint_cle_cdf
from subspace import estimate_C, as_rotation, cas_rotation, constrained_first_direction, fixed_rotation, \
    BlockSupport
from .base import Problem, CLE_METHODS

logger = logging.getLogger(__name__)


class CleProblem(Problem):
    """P(X_T[0] <= K) for a chemical Langevin system.

    Pre-integration always acts on the Gaussians of the last step.
    """
    name = 'cle'
    methods = CLE_METHODS

    def __init__(self, spec):
        self.spec = spec
        self.param_K = spec.K

    @property
    def s(self):
        return self.spec.s

    @property
    def last_step(self):
        return tuple(range(self.s - self.spec.J, self.s))

    def rotation(self, method, M, eps, seed):
        spec = self.spec
        if method == 'PRE_STD':
            u1 = np.zeros(self.s)
            u1[self.last_step[0]] = 1.0
            return fixed_rotation(u1)
        C = estimate_C(lambda Z: cle_smoothed(spec, Z), self.s, M=M, seed=seed, eps=eps)
        if method == 'RQMC_AS':
            return as_rotation(C)
        block = BlockSupport(self.last_step)
        return cas_rotation(C, constrained_first_direction(C, block), block)

    def _build(self, method, M, eps, seed):
        spec = self.spec
        if method in ('MC', 'RQMC_STD'):
            return (lambda Z: cle_indicator(spec, Z)), 1.0
        rot = self.rotation(method, M, eps, seed)
        U = rot.U
        if method == 'RQMC_AS':
            return (lambda Z: cle_indicator(spec, Z @ U.T)), 1.0
        u1, complement = U[:, 0], U[:, 1:]
        return (lambda Y: preint_cle_cdf(spec, u1, spec.K, Y, complement=complement)), 1.0

    @classmethod
    def settings(cls, strikes=modeling.CLE_STRIKES, **kwargs):
        return [cls(modeling.isomerization(K=K, **kwargs)) for K in strikes]
