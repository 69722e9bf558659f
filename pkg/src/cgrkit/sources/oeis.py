from ..errors import InputError


def parse_oeis_bfile(data):
    """Parse an OEIS b-file (``index value`` per line) into a list of ints.

    Indices must be consecutive; the starting offset is taken from the first
    line, since b-files start at the sequence's own offset (0 or 1 usually).
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="strict")
    values = []
    expected = None
    for lineno, raw in enumerate(data.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"expected 'index value', got {line!r}", line=lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"non-integer field in {line!r}", line=lineno) from None
        if expected is not None and index != expected:
            kind = "gap" if index > expected else "non-monotone index"
            raise InputError(f"{kind}: expected index {expected}, got {index}", line=lineno)
        values.append(value)
        expected = index + 1
    return values


def read_oeis_bfile(path):
    with open(path, "rb") as fh:
        return parse_oeis_bfile(fh.read())
