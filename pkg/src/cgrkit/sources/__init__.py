"""Symbol-stream producers: FASTA, OEIS b-files, number sequences, continued fractions, PRNG."""

from .alphabet import ALPHABETS, DNA, PROTEIN, AlphabetMap, SymbolSequence, relabel
from .contfrac import (
    cf_partial_quotients_decimal,
    cf_partial_quotients_rational,
    cf_sqrt2,
    convergent,
)
from .fasta import FastaRecord, parse_fasta, read_fasta
from .numbers import (
    digits_mod,
    e_digit_string,
    fibonacci_mod,
    pi_digit_string,
    pi_digits,
    primes,
    sqrt2_digit_string,
)
from .oeis import parse_oeis_bfile, read_oeis_bfile
from .prng import SplitMix64, prng_stream, uniform_below, uniform_doubles

__all__ = [
    "ALPHABETS",
    "DNA",
    "PROTEIN",
    "AlphabetMap",
    "FastaRecord",
    "SplitMix64",
    "SymbolSequence",
    "cf_partial_quotients_decimal",
    "cf_partial_quotients_rational",
    "cf_sqrt2",
    "convergent",
    "digits_mod",
    "e_digit_string",
    "fibonacci_mod",
    "parse_fasta",
    "parse_oeis_bfile",
    "pi_digit_string",
    "pi_digits",
    "primes",
    "prng_stream",
    "read_fasta",
    "read_oeis_bfile",
    "relabel",
    "sqrt2_digit_string",
    "uniform_below",
    "uniform_doubles",
]
