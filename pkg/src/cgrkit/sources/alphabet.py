from dataclasses import dataclass, field

import numpy as np

from ..errors import ContractError


@dataclass(frozen=True)
class SymbolSequence:
    """A stream of symbol indices in ``[0, alphabet_size)``."""

    alphabet_size: int
    symbols: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        syms = np.asarray(self.symbols, dtype=np.int64)
        if syms.ndim != 1:
            raise ContractError("symbols must be one-dimensional")
        if self.alphabet_size < 1:
            raise ContractError(f"alphabet size must be positive, got {self.alphabet_size}")
        if syms.size:
            bad = np.flatnonzero((syms < 0) | (syms >= self.alphabet_size))
            if bad.size:
                i = int(bad[0])
                raise ContractError(
                    f"symbol {int(syms[i])} at position {i} outside alphabet of size {self.alphabet_size}"
                )
        syms.setflags(write=False)
        object.__setattr__(self, "symbols", syms)

    def __len__(self):
        return len(self.symbols)

    def tolist(self):
        return self.symbols.tolist()


@dataclass(frozen=True)
class AlphabetMap:
    """Injective token-to-index mapping plus display labels for the polygon vertices."""

    name: str
    mapping: dict
    labels: tuple = field(default=())

    def __post_init__(self):
        size = len(set(self.mapping.values()))
        if sorted(set(self.mapping.values())) != list(range(size)):
            raise ValueError(f"{self.name}: indices must cover 0..{size - 1}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(size)))

    @property
    def size(self):
        return len(self.labels)

    def encode(self, tokens):
        """Map ``tokens`` to indices, dropping tokens outside the alphabet.

        Returns ``(indices, skipped)``.
        """
        get = self.mapping.get
        out = []
        skipped = 0
        for t in tokens:
            i = get(t)
            if i is None:
                skipped += 1
            else:
                out.append(i)
        return np.array(out, dtype=np.int64), skipped


# A bottom-left, C top-left, G top-right, T/U bottom-right
DNA = AlphabetMap(
    "dna",
    {"A": 0, "C": 1, "G": 2, "T": 3, "U": 3},
    ("A", "C", "G", "T"),
)

PROTEIN_CODES = "ARNDCQEGHILKMFPSTWYV"
PROTEIN = AlphabetMap(
    "protein",
    {c: i for i, c in enumerate(PROTEIN_CODES)},
    tuple(PROTEIN_CODES),
)

ALPHABETS = {"dna": DNA, "protein": PROTEIN}


def relabel(values, labels):
    """Map integer ``values`` onto vertex indices by their position in ``labels``.

    Values that match no label are dropped; the number dropped is returned
    alongside, e.g. the prime 2 when primes mod 8 are drawn on vertices 1,3,5,7.
    """
    lookup = {int(lab): i for i, lab in enumerate(labels)}
    if len(lookup) != len(labels):
        raise ContractError(f"duplicate vertex labels: {labels}")
    out = [lookup[v] for v in map(int, values) if v in lookup]
    return np.array(out, dtype=np.int64), len(values) - len(out)
