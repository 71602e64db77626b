import numpy as np

from ._specs import as_matrix


def lognormal_sum(spec, R, Y):
    """ h(y) = sum_j exp(mu_j + (R y)_j). """
    Y = np.atleast_2d(Y)
    return np.exp(np.asarray(spec.mu)[None, :] + Y @ as_matrix(R, spec.d).T).sum(axis=1)
