import logging

import numpy as np

from utils import mix_seed
from utils.errors import DomainError
from .sobol import LowDiscrepancySet, digits_to_values

logger = logging.getLogger(__name__)

OUT_BITS = 53

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix64(x):
    """ splitmix64 over uint64 arrays; wraps modulo 2^64. """
    with np.errstate(over='ignore'):
        z = x + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def scramble(points, seed):
    """Nested uniform scrambling of every coordinate down to 53 bits.

    The flip applied to input bit b of coordinate j is one pseudorandom bit
    keyed by (seed, j, b, leading b input bits), so the permutation tree is
    never stored. Bits below the generator's precision are filled from a hash
    of the full input digit string.
    """
    if points.scrambled:
        raise DomainError("point set is already scrambled")
    digits = points.digits
    in_bits = points.bits
    tail = OUT_BITS - in_bits
    out = np.zeros_like(digits)
    for j in range(points.s):
        col = digits[:, j]
        acc = np.zeros_like(col)
        for b in range(in_bits):
            shift = np.uint64(in_bits - b)
            prefix = col >> shift if b > 0 else np.zeros_like(col)
            key = np.uint64(mix_seed(seed, 'scramble', j, b))
            flip = _mix64(prefix ^ key) >> np.uint64(63)
            bit = (col >> np.uint64(in_bits - 1 - b)) & np.uint64(1)
            acc = (acc << np.uint64(1)) | (bit ^ flip)
        key = np.uint64(mix_seed(seed, 'scramble', j, in_bits))
        low = _mix64(col ^ key) >> np.uint64(64 - tail)
        out[:, j] = (acc << np.uint64(tail)) | low
    return LowDiscrepancySet(values=digits_to_values(out, OUT_BITS), digits=out,
                             bits=OUT_BITS, scrambled=True, seed=seed)


def uniform_stream(n, s, seed):
    """ Pseudorandom uniforms for plain MC, counter i*s + j on the 'mc' stream. """
    counter = np.arange(n * s, dtype=np.uint64).reshape(n, s)
    key = np.uint64(mix_seed(seed, 'mc'))
    with np.errstate(over='ignore'):
        digits = _mix64(counter * _GOLDEN ^ key) >> np.uint64(64 - OUT_BITS)
    return digits_to_values(digits, OUT_BITS)
