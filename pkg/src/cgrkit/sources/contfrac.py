"""Simple continued fractions of rationals and of decimal-string approximations."""

from fractions import Fraction

from ..errors import InputError
from ._bigint import int_from_digits


def _euclid(p, q, max_terms=None):
    terms = []
    while q and (max_terms is None or len(terms) < max_terms):
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return terms


def cf_partial_quotients_rational(x, max_terms=None, trailing_one=False):
    """Partial quotients ``[a0, a1, ...]`` of the rational ``x``.

    The canonical expansion ends in a quotient greater than 1.  With
    ``trailing_one`` a complete expansion of length > 1 has its final
    quotient ``a`` rewritten as ``a - 1, 1`` (9/7 -> [1, 3, 1, 1]).
    """
    x = Fraction(x)
    terms = _euclid(x.numerator, x.denominator, None)
    if max_terms is not None and len(terms) > max_terms:
        return terms[:max_terms]
    if trailing_one and len(terms) > 1 and terms[-1] > 1:
        terms[-1] -= 1
        terms.append(1)
        if max_terms is not None:
            terms = terms[:max_terms]
    return terms


def convergent(terms):
    """Value of the finite continued fraction ``terms`` as an exact Fraction."""
    if not terms:
        raise ValueError("empty continued fraction")
    # forward recurrence h_k = a_k h_{k-1} + h_{k-2}
    h0, h1 = 1, terms[0]
    k0, k1 = 0, 1
    for a in terms[1:]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
    return Fraction(h1, k1)


def parse_decimal(digits):
    """Return ``(numerator, places)`` for a decimal string like ``"-3.14159"``."""
    s = "".join(digits.split())
    sign = 1
    if s and s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    whole, _, frac = s.partition(".")
    if not whole:
        whole = "0"
    if not whole.isdigit() or (frac and not frac.isdigit()):
        raise InputError(f"not a decimal number: {digits[:40]!r}")
    return sign * int_from_digits(whole + frac), len(frac)


def cf_partial_quotients_decimal(digits, max_terms=None, uncertainty="half-ulp"):
    """Partial quotients of the number a decimal string approximates.

    The string pins the true value only to an interval: ``value +- ulp/2``
    for a rounded string (``"half-ulp"``, the default) or ``[value, value +
    ulp]`` for a truncated one (``"truncated"``).  Term ``k`` is emitted only
    when the expansions of both interval ends agree through ``k``, so every
    returned term holds for any number in the interval.  ``"exact"`` treats
    the string as the exact rational it spells.
    """
    num, places = parse_decimal(digits)
    den = 10**places
    if uncertainty == "exact":
        return cf_partial_quotients_rational(Fraction(num, den), max_terms)
    if uncertainty == "half-ulp":
        lo, hi = 2 * num - 1, 2 * num + 1
        den *= 2
    elif uncertainty == "truncated":
        lo, hi = num, num + 1
    else:
        raise ValueError(f"unknown uncertainty model {uncertainty!r}")

    terms = []
    p1, q1, p2, q2 = lo, den, hi, den
    while max_terms is None or len(terms) < max_terms:
        a1, r1 = divmod(p1, q1)
        a2, r2 = divmod(p2, q2)
        if a1 != a2:
            break
        terms.append(a1)
        if r1 == 0 or r2 == 0:
            break
        p1, q1, p2, q2 = q1, r1, q2, r2
    if not terms:
        raise InputError(f"{digits[:40]!r} is too imprecise to fix even the integer part")
    return terms


def cf_sqrt2(count):
    """Partial quotients of sqrt(2): ``[1, 2, 2, ...]`` of length ``count``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    return [1] + [2] * (count - 1)
