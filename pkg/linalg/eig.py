import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

SYM_TOL = 1e-12
OFF_TOL = 1e-12
MAX_SWEEPS = 60


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """ Eigenvalues in descending order, eigenvectors as matching columns. """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def d(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ Q.T


def check_symmetric(S, tol=SYM_TOL):
    S = np.atleast_2d(np.asarray(S, dtype=np.float64))
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise InvalidInputError("expected a square matrix, got shape %s" % (S.shape,))
    if not np.all(np.isfinite(S)):
        raise InvalidInputError("matrix has non-finite entries")
    scale = max(np.abs(S).max(), np.finfo(np.float64).tiny)
    if np.abs(S - S.T).max() > tol * scale:
        raise InvalidInputError("matrix is not symmetric to %g relative" % tol)
    return 0.5 * (S + S.T)


def _fix_signs(Q):
    # largest-magnitude entry of each column positive, first such index wins
    idx = np.argmax(np.abs(Q), axis=0)
    signs = np.where(Q[idx, np.arange(Q.shape[1])] < 0, -1.0, 1.0)
    return Q * signs


def sym_eig(S):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps over all (p, q) pairs in row order until the off-diagonal
    Frobenius norm falls below 1e-12 of the full norm.
    """
    A = check_symmetric(S).copy()
    d = A.shape[0]
    V = np.eye(d)
    norm = np.linalg.norm(A)
    sweeps = 0
    while d > 1 and norm > 0:
        off = np.sqrt(max(np.sum(A * A) - np.sum(np.diag(A) ** 2), 0.0))
        if off <= OFF_TOL * norm:
            break
        if sweeps == MAX_SWEEPS:
            logger.warning("Jacobi stopped after %d sweeps, off-diagonal norm %.3e", sweeps, off)
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * ap - s * aq, s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
        sweeps += 1
    w = np.diag(A).copy()
    order = np.argsort(-w, kind='stable')
    logger.debug("sym_eig d=%d converged in %d sweeps", d, sweeps)
    return SpectralDecomposition(eigenvalues=w[order], eigenvectors=_fix_signs(V[:, order]))
