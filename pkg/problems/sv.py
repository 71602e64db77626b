import logging

import numpy as np
import scipy.linalg

from linalg import bm_construction
from models import sv_asian, modeling
from preint import sv_context
from subspace import estimate_C, as_rotation, cas_rotation, constrained_first_direction, BlockSupport, \
    identity_rotation, Rotation
from .base import Problem, FINANCE_METHODS

logger = logging.getLogger(__name__)


def pca_block_rotation(d, dt):
    """ blockdiag(Q, Q) with Q = R_std^{-1} R_pca: PCA paths for both Brownian motions. """
    R_std = bm_construction(d, dt, 'standard').R
    R_pca = bm_construction(d, dt, 'pca').R
    Q = scipy.linalg.solve_triangular(R_std, R_pca, lower=True)
    return Rotation(U=scipy.linalg.block_diag(Q, Q))


class SvProblem(Problem):
    """Asian call under a stochastic-volatility model.

    Inputs are z = (z1, z2), asset and volatility drivers, both under the
    standard construction; every method picks a rotation U of z.
    """
    methods = FINANCE_METHODS

    def __init__(self, spec):
        self.spec = spec
        self.name = 'sv-%s' % spec.kind
        self.param_rho = spec.rho
        self.param_K = spec.K

    @property
    def s(self):
        return 2 * self.spec.d

    def payoff(self, Z):
        return sv_asian(self.spec, None, Z)

    def rotation(self, method, M=256, eps=1e-6, seed=0):
        spec = self.spec
        if method in ('MC', 'RQMC_STD', 'PRE_STD'):
            return identity_rotation(self.s)
        if method in ('RQMC_PCA', 'PRE_PCA'):
            return pca_block_rotation(spec.d, spec.dt)
        C = estimate_C(self.payoff, self.s, M=M, seed=seed, eps=eps)
        if method == 'RQMC_AS':
            return as_rotation(C)
        block = BlockSupport(tuple(range(spec.d)))
        u1 = constrained_first_direction(C, block)
        if np.all(u1[:spec.d] <= 0):
            u1 = -u1
        if np.any(u1[:spec.d] < 0):
            logger.info("%s: constrained direction has mixed signs, using the PCA direction", self.name)
            u1 = pca_block_rotation(spec.d, spec.dt).U[:, 0]
            block = None
        return cas_rotation(C, u1, block)

    def _build(self, method, M, eps, seed):
        spec = self.spec
        rot = self.rotation(method, M, eps, seed)
        if method.startswith('PRE_'):
            return sv_context(spec, rot).integrand, spec.discount
        return (lambda Z: sv_asian(spec, rot, Z)), spec.discount

    def rotated_slice(self, method, x1, x2, rest=None, M=256, eps=1e-6, seed=0):
        """Payoff on the grid (x1, x2) of the first two rotated inputs.

        The other inputs are fixed at ``rest`` (zeros by default). Returns an
        array of shape (len(x2), len(x1)).
        """
        rot = self.rotation(method, M, eps, seed)
        x1, x2 = np.asarray(x1, dtype=np.float64), np.asarray(x2, dtype=np.float64)
        rest = np.zeros(self.s - 2) if rest is None else np.asarray(rest, dtype=np.float64)
        X1, X2 = np.meshgrid(x1, x2)
        Z = np.empty((X1.size, self.s))
        Z[:, 0], Z[:, 1], Z[:, 2:] = X1.ravel(), X2.ravel(), rest
        return sv_asian(self.spec, rot, Z).reshape(X1.shape)

    @classmethod
    def settings(cls, model='heston', rhos=modeling.SV_RHOS, strikes=modeling.SV_STRIKES, **kwargs):
        return [cls(modeling.sv_model(model, rho=rho, K=K, **kwargs)) for rho in rhos for K in strikes]
