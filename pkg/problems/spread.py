import logging

from linalg import PathConstruction, cholesky
from models import BasketSpec, basket_payoff, basket_factor, basket_covariance, basket_sign_pattern, modeling
from preint import basket_context
from subspace import estimate_C, as_rotation, constrained_rotation, SignPattern
from .base import Problem, FINANCE_METHODS

logger = logging.getLogger(__name__)


class BasketProblem(Problem):
    """Basket (spread for L = 2) Asian call.

    Args:
        spec (BasketSpec): assets, weights and strike.
    """
    name = 'spread'
    methods = FINANCE_METHODS

    def __init__(self, spec):
        self.spec = spec
        corr = spec.corr
        self.param_rho = float(corr[0, 1]) if spec.L > 1 else None
        self.param_K = spec.K

    @property
    def s(self):
        return self.spec.L * self.spec.d

    def cholesky_construction(self):
        Lam = basket_covariance(self.spec)
        return PathConstruction(R=cholesky(Lam), kind='cholesky', Sigma=Lam)

    def construction(self, method, M, eps, seed):
        spec = self.spec
        if method in ('MC', 'RQMC_STD', 'PRE_STD'):
            return basket_factor(spec, 'standard')
        if method in ('RQMC_PCA', 'PRE_PCA'):
            return basket_factor(spec, 'pca', feasible=method == 'PRE_PCA')
        R0 = self.cholesky_construction()
        C = estimate_C(lambda Z: basket_payoff(spec, R0, Z), self.s, M=M, seed=seed, eps=eps)
        if method == 'RQMC_AS':
            rot = as_rotation(C)
        else:
            rot = constrained_rotation(C, SignPattern(R0=R0.R, signs=basket_sign_pattern(spec)))
        return R0.rotate(rot.U)

    def _build(self, method, M, eps, seed):
        spec = self.spec
        R = self.construction(method, M, eps, seed)
        if method.startswith('PRE_'):
            ctx = basket_context(spec, R)
            return ctx.integrand, spec.discount
        return (lambda Z: basket_payoff(spec, R, Z)), spec.discount

    @classmethod
    def settings(cls, rhos=modeling.SPREAD_RHOS, strikes=modeling.SPREAD_STRIKES, **kwargs):
        return [cls(modeling.spread(rho=rho, K=K, **kwargs)) for rho in rhos for K in strikes]
