from dataclasses import dataclass

from ..errors import InputError
from .alphabet import DNA, SymbolSequence


@dataclass(frozen=True)
class FastaRecord:
    header: str
    sequence: SymbolSequence
    skipped: int


def _records(text):
    header = None
    chunks = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            if header is not None:
                yield header, header_line, "".join(chunks)
            header, header_line, chunks = line[1:].strip(), lineno, []
        elif header is None:
            raise InputError("sequence data before the first '>' header", line=lineno)
        else:
            chunks.append(line)
    if header is not None:
        yield header, header_line, "".join(chunks)


def parse_fasta(data, alphabet=DNA):
    """Parse FASTA ``data`` (bytes or str) into records over ``alphabet``.

    Residues are upper-cased before lookup. Anything the alphabet does not
    cover (``N``, ambiguity codes, gap characters) is skipped and counted in
    ``FastaRecord.skipped``.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"FASTA is not valid UTF-8: {exc}") from None
    records = []
    for header, lineno, residues in _records(data):
        symbols, skipped = alphabet.encode(residues.upper())
        if len(symbols) == 0:
            raise InputError(f"record {header!r} has no {alphabet.name} symbols", line=lineno)
        seq = SymbolSequence(alphabet.size, symbols, provenance=f"fasta:{header}")
        records.append(FastaRecord(header, seq, skipped))
    if not records:
        raise InputError("no FASTA records found")
    return records


def read_fasta(path, alphabet=DNA):
    with open(path, "rb") as fh:
        return parse_fasta(fh.read(), alphabet)
