import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from utils.errors import InvalidInputError, NotPositiveDefiniteError, UnknownConstructionError
from .eig import check_symmetric, sym_eig

logger = logging.getLogger(__name__)

CONSTRUCTIONS = ('standard', 'pca', 'cholesky')


def cholesky(S):
    """ Lower-triangular L with L L^T = S. """
    S = check_symmetric(S)
    try:
        return scipy.linalg.cholesky(S, lower=True)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError("matrix is not positive definite: %s" % e)


def reversed_cholesky(S):
    """Upper-triangular R with R R^T = S.

    Obtained by factoring S with its index order reversed, so the first
    column of R is (R_11, 0, ..., 0).
    """
    S = check_symmetric(S)
    L = cholesky(S[::-1, ::-1])
    return L[::-1, ::-1].copy()


@dataclass(frozen=True, eq=False)
class PathConstruction:
    """ Square root R of a covariance Sigma; ``kind`` names how it was built. """
    R: np.ndarray
    kind: str
    Sigma: np.ndarray
    U: Optional[np.ndarray] = None

    @property
    def d(self):
        return self.R.shape[0]

    @property
    def first_column(self):
        return self.R[:, 0]

    def rotate(self, U):
        return PathConstruction(R=self.R @ U, kind='rotated', Sigma=self.Sigma, U=U)

    def residual(self):
        scale = max(np.abs(self.Sigma).max(), np.finfo(np.float64).tiny)
        return np.abs(self.R @ self.R.T - self.Sigma).max() / scale

    def check(self, rtol=1e-9):
        res = self.residual()
        if res >= rtol:
            raise InvalidInputError("R R^T differs from Sigma by %.3e relative" % res)
        return self


def bm_covariance(d, dt):
    t = np.arange(1, d + 1)
    return dt * np.minimum.outer(t, t).astype(np.float64)


def bm_construction(d, dt, kind='standard'):
    if d < 1 or dt <= 0:
        raise InvalidInputError("need d >= 1 and dt > 0, got d=%s dt=%s" % (d, dt))
    Sigma = bm_covariance(d, dt)
    if kind == 'standard':
        R = np.sqrt(dt) * np.tril(np.ones((d, d)))
    elif kind == 'pca':
        eig = sym_eig(Sigma)
        R = eig.eigenvectors * np.sqrt(np.maximum(eig.eigenvalues, 0.0))
        if R[:, 0].sum() < 0:
            R[:, 0] = -R[:, 0]
    elif kind == 'cholesky':
        R = cholesky(Sigma)
    else:
        raise UnknownConstructionError("unknown construction '%s', expected one of %s"
                                       % (kind, ', '.join(CONSTRUCTIONS)))
    return PathConstruction(R=R, kind=kind, Sigma=Sigma)


def _as_unit(u1):
    u1 = np.asarray(u1, dtype=np.float64).ravel()
    if abs(np.linalg.norm(u1) - 1.0) > 1e-10:
        raise InvalidInputError("direction must have unit length, got norm %.12g" % np.linalg.norm(u1))
    return u1


def householder_matrix(u1):
    """ H = I - 2 w w^T with w along u1 - e1, so that H e1 = u1. """
    u1 = _as_unit(u1)
    d = u1.shape[0]
    w = u1.copy()
    w[0] -= 1.0
    nw = np.linalg.norm(w)
    if nw < 1e-12:
        return np.eye(d)
    w /= nw
    return np.eye(d) - 2.0 * np.outer(w, w)


def householder_complement(u1, d=None):
    """ Orthonormal basis (d x (d-1)) of the complement of u1. """
    u1 = _as_unit(u1)
    if d is not None and d != u1.shape[0]:
        raise InvalidInputError("direction has length %d, expected %d" % (u1.shape[0], d))
    return householder_matrix(u1)[:, 1:]
