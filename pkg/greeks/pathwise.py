import enum
import logging

import numpy as np

from models import as_matrix

logger = logging.getLogger(__name__)


class GreekKind(str, enum.Enum):
    DELTA = 'delta'
    GAMMA = 'gamma'
    RHO = 'rho'
    THETA = 'theta'
    VEGA = 'vega'


KINDS = tuple(k.value for k in GreekKind)


def _paths(spec, R, Z):
    Z = np.atleast_2d(Z)
    B = Z @ as_matrix(R, spec.d).T
    drift = (spec.r - 0.5 * spec.sigma ** 2) * spec.times
    S = spec.S0 * np.exp(drift + spec.sigma * B)
    return B, S


def greek_factor(spec, kind, R, Z):
    """Smooth factor g of a pathwise Greek g * 1{S_bar >= K}, discounted.

    Also returns S_bar so callers can form the indicator.
    """
    kind = GreekKind(kind)
    B, S = _paths(spec, R, Z)
    S_bar = S.mean(axis=1)
    disc = spec.discount
    t = spec.times
    if kind is GreekKind.DELTA:
        g = S_bar / spec.S0
    elif kind is GreekKind.GAMMA:
        dt = spec.dt
        x1 = B[:, 0] / np.sqrt(dt)
        g = S_bar / (spec.S0 ** 2 * spec.sigma ** 2 * dt) * (spec.sigma * np.sqrt(dt) * x1 - spec.sigma ** 2 * dt)
    elif kind is GreekKind.VEGA:
        g = (S * (B - spec.sigma * t)).mean(axis=1)
    elif kind is GreekKind.RHO:
        g = -spec.T * (S_bar - spec.K) + (t * S).mean(axis=1)
    else:
        # market theta: minus the derivative in maturity
        j_over_d = np.arange(1, spec.d + 1) / spec.d
        dS = S * ((spec.r - 0.5 * spec.sigma ** 2) * j_over_d + spec.sigma * B / (2.0 * spec.T))
        g = -(-spec.r * (S_bar - spec.K) + dS.mean(axis=1))
    return disc * g, S_bar


def greek_pathwise(spec, kind, R, Z):
    g, S_bar = greek_factor(spec, kind, R, Z)
    return np.where(S_bar >= spec.K, g, 0.0)
