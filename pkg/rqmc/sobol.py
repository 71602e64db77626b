import os
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from utils.errors import UnsupportedDimensionError

logger = logging.getLogger(__name__)

BITS = 32
_TABLE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'new-joe-kuo-65.txt')

# values never touch 0; the origin point is shifted to this floor
INTERIOR = 2.0 ** -54


@dataclass(frozen=True, eq=False)
class DirectionNumbers:
    """Column vectors V[j, k] (k = 0..31, most significant bit first) of the
    Sobol' generator matrix of dimension j."""
    V: np.ndarray

    @property
    def max_dim(self):
        return self.V.shape[0]


def _columns(degree, poly, m):
    V = [0] * BITS
    for i in range(min(degree, BITS)):
        V[i] = m[i] << (BITS - 1 - i)
    for i in range(degree, BITS):
        v = V[i - degree] ^ (V[i - degree] >> degree)
        for k in range(1, degree):
            if (poly >> (degree - 1 - k)) & 1:
                v ^= V[i - k]
        V[i] = v
    return V


@lru_cache(maxsize=4)
def load_direction_numbers(path=_TABLE):
    """ Parse a Joe-Kuo format table (d, s, a, m_1..m_s per line, one header line).
    Dimension 1 is the van der Corput sequence and is not listed in the file.
    """
    rows = [[1 << (BITS - 1 - k) for k in range(BITS)]]
    with open(path) as f:
        next(f)
        for line in f:
            fields = line.split()
            if not fields:
                continue
            degree, poly = int(fields[1]), int(fields[2])
            m = [int(v) for v in fields[3:3 + degree]]
            rows.append(_columns(degree, poly, m))
    logger.debug("loaded %d Sobol' dimensions from %s", len(rows), path)
    return DirectionNumbers(V=np.array(rows, dtype=np.uint64))


MAX_DIM = 65


@dataclass(frozen=True, eq=False)
class LowDiscrepancySet:
    values: np.ndarray
    digits: np.ndarray
    bits: int = BITS
    scrambled: bool = False
    seed: int = 0

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def s(self):
        return self.values.shape[1]


def digits_to_values(digits, bits):
    return np.maximum(digits.astype(np.float64) * 2.0 ** -bits, INTERIOR)


def sobol_points(n, s, table=None):
    """ First n points of the s-dimensional Sobol' sequence, natural index order.
    """
    table = table or load_direction_numbers()
    if s < 1 or s > table.max_dim:
        raise UnsupportedDimensionError(
            "dimension %d outside the direction-number table (1..%d)" % (s, table.max_dim))
    if n < 1 or n > 2 ** BITS:
        raise UnsupportedDimensionError("point count %d outside 1..2^%d" % (n, BITS))
    idx = np.arange(n, dtype=np.uint64)
    digits = np.zeros((n, s), dtype=np.uint64)
    for k in range(BITS):
        if n <= (1 << k):
            break
        on = ((idx >> np.uint64(k)) & np.uint64(1)).astype(bool)
        digits[on] ^= table.V[:s, k]
    return LowDiscrepancySet(values=digits_to_values(digits, BITS), digits=digits)
