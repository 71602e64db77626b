import logging

import numpy as np

from rqmc import norm_sf, norm_pdf
from utils.errors import SignConditionError
from .roots import find_roots_monotone, TOL_X, TOL_F

logger = logging.getLogger(__name__)

SIGN_TOL = 1e-12


def moment0(c, gamma):
    """ int_gamma^inf e^{c z} phi(z) dz = e^{c^2/2} Phi_bar(gamma - c). """
    c = np.asarray(c, dtype=np.float64)
    return np.exp(0.5 * c * c) * norm_sf(gamma - c)


def moment1(c, gamma):
    """ int_gamma^inf z e^{c z} phi(z) dz = e^{c^2/2} [c Phi_bar(gamma - c) + phi(gamma - c)]. """
    c = np.asarray(c, dtype=np.float64)
    return np.exp(0.5 * c * c) * (c * norm_sf(gamma - c) + norm_pdf(gamma - c))


class ExpSum(object):
    """Batch of functions g_i(z) = sum_j a_ij exp(b_ij z) - K_i.

    Every term must satisfy a_ij b_ij >= 0 so that each g_i is nondecreasing
    in z; terms that violate it by rounding only get b_ij = 0.
    """
    def __init__(self, a, b, K):
        a = np.atleast_2d(np.asarray(a, dtype=np.float64))
        b = np.asarray(b, dtype=np.float64)
        b = np.broadcast_to(b, a.shape).copy()
        ab = a * b
        scale = np.abs(a).max(axis=1, keepdims=True) * np.abs(b).max(axis=1, keepdims=True)
        bad = ab < -SIGN_TOL * np.maximum(scale, np.finfo(np.float64).tiny)
        if bad.any():
            raise SignConditionError("exponential sum is not monotone: a*b = %.3e < 0" % ab[bad].min())
        b[ab < 0] = 0.0
        self.a = a
        self.b = b
        self.K = np.broadcast_to(np.asarray(K, dtype=np.float64), (a.shape[0],))

    @property
    def n(self):
        return self.a.shape[0]

    def value(self, z):
        z = np.asarray(z, dtype=np.float64).reshape(-1, 1)
        with np.errstate(over='ignore'):
            return (self.a * np.exp(self.b * z)).sum(axis=1) - self.K

    def derivative(self, z):
        z = np.asarray(z, dtype=np.float64).reshape(-1, 1)
        with np.errstate(over='ignore'):
            return (self.a * self.b * np.exp(self.b * z)).sum(axis=1)

    def _func(self, x):
        return self.value(x), self.derivative(x)

    def root(self, guess=None, tol_x=TOL_X, tol_f=TOL_F):
        """ gamma with g(gamma) = 0; -inf when g > 0 throughout, +inf when g < 0 throughout. """
        tol = tol_f * np.maximum(np.abs(self.K), 1.0)
        return find_roots_monotone(self._func, self.n, tol_x=tol_x, tol_f=tol, guess=guess)

    def conditional_call(self, gamma=None):
        """ E[(sum_j a_j e^{b_j z} - K)_+] over z ~ N(0, 1). """
        if gamma is None:
            gamma = self.root()
        g = np.asarray(gamma, dtype=np.float64).reshape(-1, 1)
        out = (self.a * moment0(self.b, g)).sum(axis=1) - self.K * norm_sf(gamma)
        return np.maximum(out, 0.0)
