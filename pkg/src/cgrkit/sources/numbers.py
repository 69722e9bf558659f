"""Integer sequences from elementary number theory, reduced to symbol streams."""

import math
from functools import lru_cache
from importlib import resources

import numpy as np

from ._bigint import digits_of_int
from .alphabet import SymbolSequence

SIEVE_LIMIT = 10**8


def digits_mod(values, m, provenance="values"):
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    # Python ints so arbitrarily large values reduce exactly
    syms = np.fromiter((int(v) % m for v in values), dtype=np.int64, count=len(values))
    return SymbolSequence(m, syms, provenance=f"{provenance} mod {m}")


def fibonacci_mod(count, m):
    """First ``count`` Fibonacci numbers (F1 = F2 = 1) reduced mod ``m``.

    Terms are carried mod ``m`` throughout, so any ``count`` is exact.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    out = np.empty(count, dtype=np.int64)
    a, b = 1 % m, 1 % m
    for i in range(count):
        out[i] = a
        a, b = b, (a + b) % m
    return SymbolSequence(m, out, provenance=f"fib:{count} mod {m}")


def primes(limit, offset=0):
    """All primes ``<= limit`` in increasing order, skipping the first ``offset`` of them."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    if limit > SIEVE_LIMIT:
        raise ValueError(f"limit {limit} exceeds the sieve bound {SIEVE_LIMIT}")
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)[offset:].tolist()


@lru_cache(maxsize=1)
def pi_digit_string():
    """Bundled decimal expansion of pi, ``"3.1415..."`` with 100000 digits after the point."""
    text = resources.files("cgrkit.data").joinpath("pi_digits.txt").read_text()
    body = "".join(line.strip() for line in text.splitlines() if not line.startswith("#"))
    return body


def pi_digits(count=None):
    """Digits of pi as ints, starting with the leading 3 (OEIS A000796 order)."""
    s = pi_digit_string().replace(".", "")
    if count is not None:
        if count > len(s):
            raise ValueError(f"only {len(s)} digits of pi are bundled")
        s = s[:count]
    return [int(c) for c in s]


def _fixed_point_string(scaled, digits):
    s = digits_of_int(scaled, digits + 1)
    return f"{s[:-digits]}.{s[-digits:]}"


def sqrt2_digit_string(digits):
    """sqrt(2) truncated to ``digits`` places after the point (exact)."""
    return _fixed_point_string(math.isqrt(2 * 10 ** (2 * digits)), digits)


def e_digit_string(digits, guard=12):
    """e truncated to ``digits`` places, from the factorial series in scaled integers.

    Each series term is floored, so the accumulated value is low by at most the
    number of terms; ``guard`` extra digits absorb that.
    """
    scale = 10 ** (digits + guard)
    total, term, k = 0, scale, 0
    while term:
        total += term
        k += 1
        term //= k
    return _fixed_point_string(total // 10**guard, digits)
