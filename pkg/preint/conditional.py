import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from linalg import householder_complement
from models import as_matrix, basket_log_paths, split_drivers, sv_variance_paths, sv_log_paths, cle_trajectory, \
    propensities
from rqmc import norm_cdf, norm_sf, norm_pdf
from utils.errors import SignConditionError, DegenerateDirectionError, InvalidInputError
from .expsum import ExpSum

logger = logging.getLogger(__name__)

SIGN_TOL = 1e-12


def _full(z_rest):
    z_rest = np.atleast_2d(np.asarray(z_rest, dtype=np.float64))
    return np.hstack([np.zeros((z_rest.shape[0], 1)), z_rest])


def _require_nonnegative(col, what):
    col = np.asarray(col, dtype=np.float64)
    tol = SIGN_TOL * max(np.abs(col).max(), np.finfo(np.float64).tiny)
    if np.any(col < -tol):
        raise SignConditionError("%s has a negative entry (%.3e)" % (what, col.min()))
    if not np.any(col > tol):
        raise SignConditionError("%s is zero" % what)


@dataclass(frozen=True, eq=False)
class PreintContext:
    """A model together with the matrix whose first column is integrated out.

    ``expsum(z_rest)`` gives the conditional average price as a function of
    the first variable, one ExpSum row per conditioning point.
    """
    family: str
    spec: Any
    M: np.ndarray = field(repr=False)

    @property
    def s(self):
        return self.M.shape[0]

    def expsum(self, z_rest):
        Z = _full(z_rest)
        n = Z.shape[0]
        spec = self.spec
        if self.family == 'gbm':
            B = Z @ self.M.T
            drift = (spec.r - 0.5 * spec.sigma ** 2) * spec.times
            a = spec.S0 / spec.d * np.exp(drift + spec.sigma * B)
            b = spec.sigma * self.M[:, 0]
        elif self.family == 'basket':
            logS = basket_log_paths(spec, self.M, Z)
            w = np.asarray(spec.weights, dtype=np.float64)
            a = (w[None, :, None] * np.exp(logS)).reshape(n, -1) / spec.d
            b = self.M[:, 0]
        elif self.family == 'sv':
            x1, x2 = split_drivers(spec, self.M, Z)
            V = sv_variance_paths(spec, x2)
            a = np.exp(sv_log_paths(spec, x1, x2, V)) / spec.d
            d = spec.d
            u = np.sqrt(1.0 - spec.rho ** 2) * self.M[:d, 0] + spec.rho * self.M[d:, 0]
            b = np.sqrt(spec.dt) * np.cumsum(np.sqrt(np.maximum(V[:, :-1], 0.0)) * u, axis=1)
        else:
            raise InvalidInputError("unknown family '%s'" % self.family)
        return ExpSum(a, b, spec.K)

    def integrand(self, z_rest, guess=None):
        """ Pre-integrated payoff given the s - 1 inputs after the first. """
        es = self.expsum(z_rest)
        return es.conditional_call(es.root(guess))


def gbm_context(spec, R):
    M = as_matrix(R, spec.d)
    _require_nonnegative(M[:, 0], "first column of R")
    return PreintContext('gbm', spec, M)


def sv_context(spec, U):
    M = as_matrix(U, 2 * spec.d)
    d = spec.d
    if np.any(M[d:, 0] != 0.0):
        raise SignConditionError("first column of U must vanish on the volatility block")
    _require_nonnegative(M[:d, 0], "first column of U on the asset block")
    return PreintContext('sv', spec, M)


def basket_context(spec, R):
    M = as_matrix(R, spec.L * spec.d)
    w = np.repeat(np.asarray(spec.weights, dtype=np.float64), spec.d)
    _require_nonnegative(w * M[:, 0], "weight-signed first column of R")
    return PreintContext('basket', spec, M)


def preint_asian_gbm(ctx, z_rest, guess=None):
    es = ctx.expsum(z_rest)
    return es.conditional_call(es.root(guess))


def preint_asian_sv(ctx, z_rest, guess=None):
    """ Conditional Asian payoff given all rotated inputs but the first. """
    es = ctx.expsum(z_rest)
    return es.conditional_call(es.root(guess))


def preint_basket(ctx, z_rest, guess=None):
    es = ctx.expsum(z_rest)
    return es.conditional_call(es.root(guess))


def preint_cle_cdf(spec, u1, K, z_rest, complement=None, species=0):
    """P(X_d[species] <= K) given every input except y1 = u1^T z.

    ``u1`` must vanish outside the last step's J coordinates; ``complement``
    is the s x (s-1) basis the remaining inputs are expressed in (Householder
    complement of u1 by default).

    A direction that cannot move the species raises DegenerateDirectionError.
    A path whose last-step propensities along u1 are all zero has slope 0
    in y1; X_d is then known and that row gets 1{m <= K}.
    """
    u1 = np.asarray(u1, dtype=np.float64).ravel()
    J, s = spec.J, spec.s
    last = slice(s - J, s)
    if np.any(u1[:s - J] != 0.0):
        raise DegenerateDirectionError("direction must vanish outside the last step")
    nu = np.asarray(spec.nu, dtype=np.float64)[species]
    if not np.any(nu * u1[last]):
        raise DegenerateDirectionError("direction does not move species %d in the last step" % species)
    if complement is None:
        complement = householder_complement(u1)
    Z0 = np.atleast_2d(z_rest) @ np.asarray(complement).T
    X_prev, _ = cle_trajectory(spec, Z0, steps=spec.d - 1)
    a = propensities(spec, X_prev)
    root = np.sqrt(a * spec.tau)
    m = X_prev[:, species] + spec.tau * a @ nu + (root * Z0[:, last]) @ nu
    c = (root * u1[last]) @ nu
    with np.errstate(divide='ignore', invalid='ignore'):
        t = (K - m) / c
    out = np.where(c > 0, norm_cdf(t), norm_sf(t))
    return np.where(c == 0, (m <= K).astype(np.float64), out)


def lognormal_expsum(spec, R, x, y_rest):
    M = as_matrix(R, spec.d)
    Y = _full(y_rest)
    a = np.exp(np.asarray(spec.mu)[None, :] + Y @ M.T)
    return ExpSum(a, M[:, 0], x)


def lognormal_conditional(spec, R, x, y_rest, guess=None, return_root=False):
    """(cdf, density) of h(y) at x given y_{-1}.

    With y1* the root of h(y1, y_{-1}) = x, cdf = Phi(y1*) and
    density = phi(y1*) / (dh/dy1)(y1*). x below the infimum gives (0, 0).
    """
    _require_nonnegative(as_matrix(R, spec.d)[:, 0], "first column of R")
    es = lognormal_expsum(spec, R, x, y_rest)
    y_star = es.root(guess)
    cdf = norm_cdf(y_star)
    finite = np.isfinite(y_star)
    slope = es.derivative(np.where(finite, y_star, 0.0))
    with np.errstate(divide='ignore', invalid='ignore'):
        density = np.where(finite, norm_pdf(np.where(finite, y_star, 0.0)) / slope, 0.0)
    density = np.where(np.isfinite(density), density, 0.0)
    if return_root:
        return cdf, density, y_star
    return cdf, density
