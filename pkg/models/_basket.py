import logging

import numpy as np

from linalg import PathConstruction, bm_construction, bm_covariance, cholesky, reversed_cholesky, sym_eig
from ._specs import as_matrix

logger = logging.getLogger(__name__)


def basket_covariance(spec):
    """ Lambda with (k, l) block rho_kl sigma_k sigma_l Sigma. """
    sig = np.asarray(spec.sigmas, dtype=np.float64)
    cov = np.asarray(spec.corr) * np.outer(sig, sig)
    return np.kron(cov, bm_covariance(spec.d, spec.dt))


def correlation_factor(spec):
    """F with F F^T = corr whose first column agrees in sign with the weights.

    The lower Cholesky factor is tried first, then the factor of the reversed
    order; when neither qualifies the lower factor is returned.
    """
    corr = np.asarray(spec.corr, dtype=np.float64)
    w = np.asarray(spec.weights, dtype=np.float64)
    candidates = []
    for factor in (cholesky, reversed_cholesky):
        try:
            candidates.append(factor(corr))
        except ValueError:
            continue
    if not candidates:
        eig = np.linalg.eigh(corr)
        candidates.append(eig[1] * np.sqrt(np.maximum(eig[0], 0.0)))
    for F in candidates:
        if np.all(w * F[:, 0] >= -1e-14):
            return F
    logger.debug("no correlation factor satisfies the weight signs")
    return candidates[0]


def _weight_signed(spec, col):
    return np.repeat(np.asarray(spec.weights, dtype=np.float64), spec.d) * col


def basket_pca(spec, feasible=False):
    """PCA construction of all dL coordinates, largest eigenvalue of Lambda first.

    Each column is signed so that its weight-signed entries sum to a
    nonnegative value. With ``feasible`` the leading column whose
    weight-signed entries are all nonnegative is moved to the front.
    """
    Lam = basket_covariance(spec)
    eig = sym_eig(Lam)
    R = eig.eigenvectors * np.sqrt(np.maximum(eig.eigenvalues, 0.0))
    signs = np.where(_weight_signed(spec, R.T).sum(axis=1) < 0, -1.0, 1.0)
    R = R * signs
    if feasible:
        ok = [k for k in range(R.shape[1]) if _single_signed(_weight_signed(spec, R[:, k]))]
        if not ok:
            logger.info("no PCA column of Lambda satisfies the weight signs, using the per-asset construction")
            return _kron_factor(spec, 'pca')
        if ok[0] != 0:
            logger.debug("PCA column %d moved to the front for pre-integration", ok[0])
            order = [ok[0]] + [k for k in range(R.shape[1]) if k != ok[0]]
            R = R[:, order]
    return PathConstruction(R=R, kind='pca', Sigma=Lam)


def _single_signed(col):
    return np.all(col >= -1e-12 * np.abs(col).max())


def _kron_factor(spec, kind):
    F = correlation_factor(spec)
    one = bm_construction(spec.d, spec.dt, kind)
    R = np.kron(np.asarray(spec.sigmas)[:, None] * F, one.R)
    return PathConstruction(R=R, kind=kind, Sigma=basket_covariance(spec))


def basket_factor(spec, kind='standard', feasible=False):
    """Square root R of Lambda over the dL stacked coordinates.

    ``standard`` is kron(D_sigma F, R_std). ``pca`` comes from the
    eigendecomposition of Lambda itself, see :func:`basket_pca`.
    """
    if kind == 'pca':
        return basket_pca(spec, feasible=feasible)
    return _kron_factor(spec, kind)


def basket_sign_pattern(spec):
    """ Required sign of R_j1 for every coordinate j: sign of the weight of its asset. """
    w = np.asarray(spec.weights, dtype=np.float64)
    return np.repeat(np.where(w < 0, -1, 1), spec.d)


def basket_log_paths(spec, R, Z):
    Z = np.atleast_2d(Z)
    B = Z @ as_matrix(R, spec.L * spec.d).T
    n = B.shape[0]
    t = spec.dt * np.arange(1, spec.d + 1)
    sig = np.asarray(spec.sigmas, dtype=np.float64)[:, None]
    drift = np.log(np.asarray(spec.S0, dtype=np.float64))[:, None] + (spec.r - 0.5 * sig ** 2) * t
    return drift[None, :, :] + B.reshape(n, spec.L, spec.d)


def basket_average(spec, R, Z):
    S = np.exp(basket_log_paths(spec, R, Z))
    return np.einsum('l,nlj->n', np.asarray(spec.weights, dtype=np.float64), S) / spec.d


def basket_payoff(spec, R, Z):
    return np.maximum(basket_average(spec, R, Z) - spec.K, 0.0)
