import logging

import numpy as np
from scipy.special import ndtri

from preint import gbm_context
from rqmc import norm_sf
from .pathwise import greek_factor

logger = logging.getLogger(__name__)

_TINY = np.finfo(np.float64).tiny


def sov_transform(kind, spec, R, Z, guess=None):
    """Continuous version of a pathwise Greek with the same expectation.

    With alpha the root of S_bar = K in z1, z1 is replaced by
    T = Phi^{-1}(Phi(alpha) + (1 - Phi(alpha)) Phi(z1)) and the factor is
    weighted by 1 - Phi(alpha), so the jump at alpha moves to infinity.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=np.float64))
    ctx = gbm_context(spec, R)
    alpha = ctx.expsum(Z[:, 1:]).root(guess)
    weight = norm_sf(alpha)
    tail = np.maximum(weight * norm_sf(Z[:, 0]), _TINY)
    Zt = Z.copy()
    Zt[:, 0] = -ndtri(tail)
    g, _ = greek_factor(spec, kind, R, Zt)
    return np.where(weight > 0, weight * g, 0.0)


def sov_map(alpha, z1):
    """ T(z1; alpha) with beta = +inf; lies in [alpha, inf). """
    return -ndtri(np.maximum(norm_sf(alpha) * norm_sf(z1), _TINY))
