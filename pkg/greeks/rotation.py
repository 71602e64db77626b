import logging

import numpy as np
import scipy.linalg

from linalg import bm_construction
from subspace import estimate_C, as_rotation, cas_rotation, Rotation, DEFAULT_M, DEFAULT_EPS
from .pathwise import GreekKind
from .sov import sov_transform

logger = logging.getLogger(__name__)

SIGN_TOL = 1e-12


def _sign_ok(col):
    return np.all(col >= -SIGN_TOL * np.abs(col).max())


def pca_direction(spec):
    """ u1 with R_std u1 proportional to the first PCA column. """
    R_std = bm_construction(spec.d, spec.dt, 'standard').R
    R_pca = bm_construction(spec.d, spec.dt, 'pca').R
    u1 = scipy.linalg.solve_triangular(R_std, R_pca[:, 0], lower=True)
    return u1 / np.linalg.norm(u1)


def greek_moment(spec, kind, M=DEFAULT_M, eps=DEFAULT_EPS, seed=0):
    """ C_hat of the SOV-smoothed Greek under the standard construction. """
    std = bm_construction(spec.d, spec.dt, 'standard')
    return estimate_C(lambda Z: sov_transform(kind, spec, std, Z), spec.d, M=M, seed=seed, eps=eps)


def greek_rotation(spec, kind, M=DEFAULT_M, eps=DEFAULT_EPS, seed=0):
    """Rotation for pre-integrating a Greek, and R = R_std U.

    C_hat comes from the SOV-smoothed Greek under the standard construction.
    Gamma always keeps e1 as first column. Other Greeks take the leading
    active direction when R_std U_1 is single-signed and the first PCA
    direction otherwise; the rest of U comes from the constrained step.
    """
    kind = GreekKind(kind)
    std = bm_construction(spec.d, spec.dt, 'standard')
    C = greek_moment(spec, kind, M=M, eps=eps, seed=seed)
    if kind is GreekKind.GAMMA:
        rot = cas_rotation(C, np.eye(spec.d)[0])
    else:
        rot = as_rotation(C)
        col = std.R @ rot.U[:, 0]
        if _sign_ok(-col) and not _sign_ok(col):
            U = rot.U.copy()
            U[:, 0] = -U[:, 0]
            rot = Rotation(U=U, constraint=rot.constraint, source=C)
        elif not _sign_ok(col):
            logger.info("%s: active direction has mixed signs, using the PCA direction", kind.value)
            rot = cas_rotation(C, pca_direction(spec))
    return rot, std.rotate(rot.U)
