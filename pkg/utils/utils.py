import hashlib
import logging
import os

_MASK64 = (1 << 64) - 1


def mkdir(path):
    if path and not os.path.exists(path):
        os.makedirs(path)


def splitmix64(x):
    """ splitmix64 finalizer on a python int """
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _tag_to_int(tag):
    if isinstance(tag, int):
        return tag & _MASK64
    digest = hashlib.blake2b(str(tag).encode('utf-8'), digest_size=8).digest()
    return int.from_bytes(digest, 'little')


def mix_seed(base_seed, *tags):
    """Derive a 64-bit seed from a base seed and any number of stream tags.

    Tags may be ints (replicate index) or strings (method name, stream name).
    The result depends on the tags and their order only, never on global state.
    """
    h = splitmix64(_tag_to_int(base_seed))
    for tag in tags:
        h = splitmix64(h ^ _tag_to_int(tag))
    return h


def setup_logging(level='INFO'):
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format='%(asctime)s %(name)s %(levelname)s %(message)s',
        force=True)
