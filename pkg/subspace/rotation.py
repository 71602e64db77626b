import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg

from linalg import sym_eig, householder_complement, householder_matrix
from utils.errors import DegenerateDirectionError, InvalidInputError
from .gradient import GradientMoment

logger = logging.getLogger(__name__)

ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class Unconstrained:
    pass


@dataclass(frozen=True, eq=False)
class FixedVector:
    u1: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class BlockSupport:
    """ First direction supported on ``index`` only. """
    index: Tuple[int, ...]

    def __post_init__(self):
        if len(self.index) == 0:
            raise InvalidInputError("BlockSupport needs a nonempty index set")


@dataclass(frozen=True, eq=False)
class SignPattern:
    """ First direction u1 with signs_j * (R0 u1)_j >= 0 for every j. """
    R0: np.ndarray = field(repr=False)
    signs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not np.all(np.isin(self.signs, (-1, 1))):
            raise InvalidInputError("SignPattern signs must be +1 or -1")

    def solve(self, r):
        R0 = self.R0
        if np.array_equal(R0, np.tril(R0)):
            return scipy.linalg.solve_triangular(R0, r, lower=True)
        if np.array_equal(R0, np.triu(R0)):
            return scipy.linalg.solve_triangular(R0, r, lower=False)
        return np.linalg.solve(R0, r)


FirstDirectionConstraint = Union[Unconstrained, FixedVector, BlockSupport, SignPattern]


@dataclass(frozen=True, eq=False)
class Rotation:
    U: np.ndarray
    constraint: FirstDirectionConstraint = Unconstrained()
    source: Optional[GradientMoment] = field(default=None, repr=False)

    @property
    def s(self):
        return self.U.shape[0]

    @property
    def first_column(self):
        return self.U[:, 0]

    def check(self, tol=ORTHO_TOL):
        err = np.abs(self.U.T @ self.U - np.eye(self.s)).max()
        if err >= tol:
            raise InvalidInputError("rotation is not orthogonal, |U^T U - I| = %.3e" % err)
        return self


def _moment(C):
    return C.C_hat if isinstance(C, GradientMoment) else np.asarray(C, dtype=np.float64)


def identity_rotation(s):
    return Rotation(U=np.eye(s))


def as_rotation(C):
    """ Eigenvectors of C_hat in descending eigenvalue order. """
    U = sym_eig(_moment(C)).eigenvectors
    return Rotation(U=U, constraint=Unconstrained(), source=C if isinstance(C, GradientMoment) else None)


def cas_rotation(C, u1, constraint=None):
    """Rotation with first column exactly ``u1``.

    The remaining columns are V W, where V spans the complement of u1 and W
    holds the eigenvectors of V^T C_hat V in descending order.
    """
    u1 = np.asarray(u1, dtype=np.float64).ravel()
    V = householder_complement(u1)
    W = sym_eig(V.T @ _moment(C) @ V).eigenvectors
    U = np.column_stack([u1, V @ W])
    return Rotation(U=U, constraint=constraint if constraint is not None else FixedVector(u1),
                    source=C if isinstance(C, GradientMoment) else None)


def fixed_rotation(u1):
    """ Householder rotation carrying e1 to ``u1``; no gradient information needed. """
    u1 = np.asarray(u1, dtype=np.float64).ravel()
    U = householder_matrix(u1)
    U[:, 0] = u1
    return Rotation(U=U, constraint=FixedVector(u1))


def constrained_first_direction(C, constraint):
    C_hat = _moment(C)
    if isinstance(constraint, BlockSupport):
        idx = np.asarray(constraint.index, dtype=int)
        sub = C_hat[np.ix_(idx, idx)]
        if not np.any(sub):
            raise DegenerateDirectionError("C_hat vanishes on the block %s" % (constraint.index,))
        u1 = np.zeros(C_hat.shape[0])
        u1[idx] = sym_eig(sub).eigenvectors[:, 0]
        return u1
    if isinstance(constraint, SignPattern):
        v1 = sym_eig(C_hat).eigenvectors[:, 0]
        r1 = constraint.R0 @ v1
        signs = constraint.signs
        ok = signs * r1 >= 0
        if np.linalg.norm(r1[ok]) < np.linalg.norm(r1[~ok]):
            r1 = -r1
            ok = signs * r1 >= 0
        if not ok.all():
            logger.debug("sign pattern truncates %d of %d entries", int((~ok).sum()), r1.size)
        r1 = np.where(ok, r1, 0.0)
        if not np.any(r1):
            raise DegenerateDirectionError("sign-pattern truncation left a zero direction")
        u1 = constraint.solve(r1)
        return u1 / np.linalg.norm(u1)
    raise InvalidInputError("constrained_first_direction needs BlockSupport or SignPattern, got %s"
                            % type(constraint).__name__)


def constrained_rotation(C, constraint):
    if isinstance(constraint, Unconstrained):
        return as_rotation(C)
    if isinstance(constraint, FixedVector):
        return cas_rotation(C, constraint.u1)
    return cas_rotation(C, constrained_first_direction(C, constraint), constraint)
