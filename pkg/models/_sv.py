import logging

import numpy as np

from utils.errors import EvaluationError
from ._specs import as_matrix

logger = logging.getLogger(__name__)


def split_drivers(spec, U, Z):
    """ x = U z, split into the asset block x1 and the volatility block x2. """
    Z = np.atleast_2d(Z)
    X = Z @ as_matrix(U, 2 * spec.d).T
    return X[:, :spec.d], X[:, spec.d:]


def sv_variance_paths(spec, x2):
    """Euler paths V_0..V_d (shape (n, d+1)) driven by the volatility block.

    Hull-White steps log V; Heston and Stein-Stein step V itself with the
    drift on the raw value and V^+ under every square root.
    """
    n, d = x2.shape
    dt = spec.dt
    sq = np.sqrt(dt)
    V = np.empty((n, d + 1))
    V[:, 0] = spec.V0
    for j in range(d):
        v = V[:, j]
        if spec.kind == 'hullwhite':
            V[:, j + 1] = v * np.exp((spec.nu - 0.5 * spec.xi ** 2) * dt + spec.xi * sq * x2[:, j])
        elif spec.kind == 'heston':
            V[:, j + 1] = v + spec.kappa * (spec.theta - v) * dt \
                + spec.sigma_v * np.sqrt(np.maximum(v, 0.0) * dt) * x2[:, j]
        else:
            V[:, j + 1] = v + spec.kappa * (spec.theta - v) * dt + spec.sigma_v * v * sq * x2[:, j]
    return V


def sv_log_paths(spec, x1, x2, V=None):
    if V is None:
        V = sv_variance_paths(spec, x2)
    Vp = np.maximum(V[:, :-1], 0.0)
    dt = spec.dt
    rho = spec.rho
    incr = (spec.r - 0.5 * Vp) * dt + np.sqrt(Vp * dt) * (np.sqrt(1.0 - rho ** 2) * x1 + rho * x2)
    return np.log(spec.S0) + np.cumsum(incr, axis=1)


def sv_average(spec, U, Z):
    x1, x2 = split_drivers(spec, U, Z)
    S_bar = np.exp(sv_log_paths(spec, x1, x2)).mean(axis=1)
    if not np.all(np.isfinite(S_bar)):
        raise EvaluationError("stochastic-volatility path is not finite")
    return S_bar


def sv_asian(spec, U, Z):
    """ Asian call under stochastic volatility on rotated inputs x = U z (undiscounted). """
    return np.maximum(sv_average(spec, U, Z) - spec.K, 0.0)
