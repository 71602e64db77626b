import logging

import numpy as np

from preint import gbm_context, moment0, moment1
from rqmc import norm_sf
from .pathwise import GreekKind

logger = logging.getLogger(__name__)


def preint_greek(spec, kind, R, z_rest, guess=None):
    """Conditional expectation of a pathwise Greek over the first input.

    Given z_{2:d}, S_j = A_j exp(c_j z1) and B_j = beta_j + R_j1 z1, so each
    Greek is a combination of E[e^{c z1}; z1 > gamma] and
    E[z1 e^{c z1}; z1 > gamma].
    """
    kind = GreekKind(kind)
    ctx = gbm_context(spec, R)
    z_rest = np.atleast_2d(z_rest)
    es = ctx.expsum(z_rest)
    gamma = es.root(guess)
    g = gamma[:, None]
    M = ctx.M
    r1 = M[:, 0]
    beta = z_rest @ M[:, 1:].T
    A = es.a * spec.d
    c = es.b
    E0 = A * moment0(c, g)
    E1 = A * moment1(c, g)
    tail = norm_sf(gamma)
    S_bar = E0.mean(axis=1)
    t = spec.times
    sig = spec.sigma
    if kind is GreekKind.DELTA:
        val = S_bar / spec.S0
    elif kind is GreekKind.GAMMA:
        dt = spec.dt
        Sx1 = (beta[:, :1] * E0 + r1[0] * E1).mean(axis=1) / np.sqrt(dt)
        val = (sig * np.sqrt(dt) * Sx1 - sig ** 2 * dt * S_bar) / (spec.S0 ** 2 * sig ** 2 * dt)
    elif kind is GreekKind.VEGA:
        val = ((beta - sig * t) * E0 + r1 * E1).mean(axis=1)
    elif kind is GreekKind.RHO:
        val = -spec.T * (S_bar - spec.K * tail) + (t * E0).mean(axis=1)
    else:
        j_over_d = np.arange(1, spec.d + 1) / spec.d
        lin = ((spec.r - 0.5 * sig ** 2) * j_over_d + sig * beta / (2.0 * spec.T)) * E0 \
            + sig * r1 / (2.0 * spec.T) * E1
        val = -(-spec.r * (S_bar - spec.K * tail) + lin.mean(axis=1))
    return spec.discount * val
