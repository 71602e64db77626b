import logging

from greeks import GreekKind, greek_pathwise, greek_moment, greek_rotation, preint_greek
from linalg import bm_construction
from models import modeling
from subspace import as_rotation
from .base import Problem, FINANCE_METHODS

logger = logging.getLogger(__name__)


class GreekProblem(Problem):
    methods = FINANCE_METHODS

    def __init__(self, spec, kind):
        self.spec = spec
        self.kind = GreekKind(kind)
        self.name = 'greeks-%s' % self.kind.value
        self.param_K = spec.K

    @property
    def s(self):
        return self.spec.d

    def construction(self, method, M, eps, seed):
        spec = self.spec
        if method in ('MC', 'RQMC_STD', 'PRE_STD'):
            return bm_construction(spec.d, spec.dt, 'standard')
        if method in ('RQMC_PCA', 'PRE_PCA'):
            return bm_construction(spec.d, spec.dt, 'pca')
        if method == 'RQMC_AS':
            C = greek_moment(spec, self.kind, M=M, eps=eps, seed=seed)
            return bm_construction(spec.d, spec.dt, 'standard').rotate(as_rotation(C).U)
        _, R = greek_rotation(spec, self.kind, M=M, eps=eps, seed=seed)
        return R

    def _build(self, method, M, eps, seed):
        spec, kind = self.spec, self.kind
        R = self.construction(method, M, eps, seed)
        # greek integrands carry their own discount factor
        if method.startswith('PRE_'):
            return (lambda Y: preint_greek(spec, kind, R, Y)), 1.0
        return (lambda Z: greek_pathwise(spec, kind, R, Z)), 1.0

    @classmethod
    def settings(cls, kind='delta', strikes=modeling.GREEK_STRIKES, **kwargs):
        return [cls(modeling.black_scholes_asian(K=K, **kwargs), kind) for K in strikes]
