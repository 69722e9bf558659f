"""SplitMix64, bit-exact, with a scalar generator and a vectorized block form.

SplitMix64 is a counter-based generator: output ``i`` depends only on
``seed + (i + 1) * GOLDEN_GAMMA``, so a block of outputs can be produced with
wrapping uint64 arithmetic in numpy.  The scalar class is kept as the
reference path and the two are checked against each other in the tests.
"""

import copy

import numpy as np

from .alphabet import SymbolSequence

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z):
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar SplitMix64 stream.

    >>> hex(SplitMix64(0).next_u64())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed=0):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def next_below(self, m):
        # floor(m * z / 2**64): multiply-shift range reduction, no rejection
        return (m * self.next_u64()) >> 64

    def next_double(self):
        return (self.next_u64() >> 11) * 2.0**-53

    def clone(self):
        return copy.copy(self)

    def __iter__(self):
        return self

    def __next__(self):
        return self.next_u64()


def splitmix64_block(seed, n, start=0):
    """Return outputs ``start .. start+n-1`` of the stream seeded with ``seed`` as uint64."""
    counters = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(int(seed) & MASK64) + counters * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def uniform_below(seed, n, m):
    """``n`` integers in ``[0, m)`` as ``floor(m * z / 2**64)`` for consecutive outputs ``z``."""
    if not 1 <= m < 2**31:
        raise ValueError(f"alphabet size must be in [1, 2**31), got {m}")
    z = splitmix64_block(seed, n)
    mm = np.uint64(m)
    hi = z >> np.uint64(32)
    lo = z & np.uint64(0xFFFFFFFF)
    # (m*hi*2**32 + m*lo) >> 64 split so every partial product fits in 64 bits
    return ((mm * hi + ((mm * lo) >> np.uint64(32))) >> np.uint64(32)).astype(np.int64)


def uniform_doubles(seed, n):
    """``n`` doubles in ``[0, 1)`` built from the top 53 bits of each output."""
    return (splitmix64_block(seed, n) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def prng_stream(seed, n, m, algorithm="splitmix64"):
    """``n`` symbols uniform over ``[0, m)`` from a seeded generator."""
    if algorithm != "splitmix64":
        raise ValueError(f"unsupported generator {algorithm!r}")
    if m < 2:
        raise ValueError(f"alphabet size must be at least 2, got {m}")
    return SymbolSequence(m, uniform_below(seed, n, m), provenance=f"prng:{seed} mod {m}")
