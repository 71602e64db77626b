import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import ndtri, ndtr, erfc

from utils.errors import DomainError
from .sobol import LowDiscrepancySet, sobol_points, INTERIOR
from .scramble import scramble, uniform_stream

logger = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)
_INV_SQRT2PI = 1.0 / np.sqrt(2.0 * np.pi)
_UPPER = 1.0 - 2.0 ** -53


@dataclass(frozen=True, eq=False)
class GaussianMatrix:
    """ n x s standard normal samples and the point set (or 'pseudorandom') they came from. """
    values: np.ndarray
    source: Union[LowDiscrepancySet, str]

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def s(self):
        return self.values.shape[1]


def norm_cdf(x):
    return ndtr(x)


def norm_sf(x):
    """ Upper tail 1 - Phi(x) through erfc, accurate far into the right tail. """
    return 0.5 * erfc(np.asarray(x, dtype=np.float64) / _SQRT2)


def norm_pdf(x):
    x = np.asarray(x, dtype=np.float64)
    return _INV_SQRT2PI * np.exp(-0.5 * x * x)


def to_gaussian(points):
    u = points.values
    if np.any(u <= 0.0) or np.any(u >= 1.0) or not np.all(np.isfinite(u)):
        raise DomainError("inverse normal CDF needs values strictly inside (0, 1)")
    z = ndtri(np.clip(u, INTERIOR, _UPPER))
    return GaussianMatrix(values=z, source=points)


def rqmc_normals(n, s, seed):
    """ Scrambled Sobol' points mapped to N(0, I_s). """
    return to_gaussian(scramble(sobol_points(n, s), seed))


def mc_normals(n, s, seed):
    u = uniform_stream(n, s, seed)
    return GaussianMatrix(values=ndtri(u), source='pseudorandom')
