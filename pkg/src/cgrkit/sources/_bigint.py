# Decimal <-> int conversion that sidesteps the interpreter's int/str digit cap
# without touching the global setting.

_CHUNK = 4000


def int_from_digits(s):
    if not s.isdigit():
        raise ValueError(f"not a digit string: {s[:20]!r}")
    value = 0
    for i in range(0, len(s), _CHUNK):
        chunk = s[i : i + _CHUNK]
        value = value * 10 ** len(chunk) + int(chunk)
    return value


def digits_of_int(n, width=0):
    """Decimal digits of ``n >= 0``, left-padded with zeros to ``width``."""
    if n < 10**_CHUNK:
        return str(n).rjust(width, "0")
    k = (len(bin(n)) * 3 // 10) // 2  # ~ half the decimal length
    hi, lo = divmod(n, 10**k)
    return (digits_of_int(hi) + digits_of_int(lo, k)).rjust(width, "0")
