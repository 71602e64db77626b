import logging
from dataclasses import dataclass

import numpy as np

from rqmc import rqmc_normals
from utils.errors import EvaluationError, InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_M = 256
DEFAULT_EPS = 1e-6


@dataclass(frozen=True, eq=False)
class GradientMoment:
    """ C_hat = mean of grad f grad f^T over M points, forward differences with step eps. """
    C_hat: np.ndarray
    M: int
    eps: float

    @property
    def s(self):
        return self.C_hat.shape[0]


def fd_gradient(f, x, eps=DEFAULT_EPS):
    """Forward-difference gradients of a batched integrand.

    ``x`` is one point (s,) or a batch (m, s); all m*(s+1) evaluations go
    through a single call of ``f``.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    m, s = X.shape
    stacked = np.repeat(X[:, None, :], s + 1, axis=1)
    stacked[:, 1:, :] += eps * np.eye(s)[None, :, :]
    values = np.asarray(f(stacked.reshape(m * (s + 1), s)), dtype=np.float64).reshape(m, s + 1)
    bad = ~np.isfinite(values)
    if bad.any():
        i, k = np.argwhere(bad)[0]
        coordinate = None if k == 0 else int(k - 1)
        raise EvaluationError("non-finite integrand value at point %d (perturbed coordinate %s)"
                              % (i, coordinate), coordinate=coordinate)
    G = (values[:, 1:] - values[:, :1]) / eps
    return G[0] if single else G


def estimate_C(f, s, M=DEFAULT_M, seed=0, eps=DEFAULT_EPS):
    if M < 1 or M & (M - 1):
        raise InvalidInputError("gradient sample count M=%d is not a power of 2" % M)
    X = rqmc_normals(M, s, seed).values
    G = fd_gradient(f, X, eps)
    C_hat = G.T @ G / M
    logger.debug("estimated C_hat: s=%d M=%d trace=%.6g", s, M, np.trace(C_hat))
    return GradientMoment(C_hat=0.5 * (C_hat + C_hat.T), M=M, eps=eps)
