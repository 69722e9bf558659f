"""Command-line front end: ``cgrkit ifs``, ``cgrkit cgr``, ``cgrkit distmap``, ``cgrkit replay``.

Source specs for ``cgr``::

    fasta:PATH                     DNA (or --alphabet protein) from the first record
    bfile:PATH mod M               OEIS b-file values
    pi[:COUNT] mod M               bundled digits of pi, leading 3 first
    fib:N mod M                    first N Fibonacci numbers
    primes:LIMIT[,OFFSET] mod M    primes up to LIMIT, skipping OFFSET of them
    cf:NAME[:DIGITS] mod M         partial quotients; NAME is e, sqrt2, pi or p/q
    prng:SEED[:COUNT]              SplitMix64 symbols over the polygon's vertices

Examples::

    cgrkit ifs sierpinski --n 50000 --out sierpinski.pgm
    cgrkit cgr "pi:50000 mod 4" --ngon 4 --rate 0.5 --out pi4.png
    cgrkit cgr "pi mod 10" --ngon 10 --rate-rule fiser --out pi10.png
    cgrkit cgr "fib:3000 mod 10" --ngon 10 --out fib.png
    cgrkit cgr "primes:1000000 mod 8" --labels 1,3,5,7 --ngon 4 --out primes8.png
    cgrkit cgr "cf:sqrt2 mod 4" --ngon 4 --out sqrt2.png
    cgrkit cgr fasta:humhbb.fa --out humhbb.png
    cgrkit distmap human.fa neanderthal.fa kiwi.fa pearlfish.fa --matrix-out d.csv --embedding-out m.csv

Exit codes: 0 success, 2 input or parse error, 3 contract violation.
"""

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import chaos_game as cg
from .affine_ifs import DEFAULT_BURN_IN, ifs_iterate, parse_ifs_table
from .errors import ContractError, InputError
from .mds import classical_mds
from .orbit import dump_orbit, orbit_csv
from .raster import encode_image, rasterize, read_image
from .similarity import distance_matrix
from .sources import (
    ALPHABETS,
    SymbolSequence,
    cf_partial_quotients_decimal,
    cf_partial_quotients_rational,
    e_digit_string,
    fibonacci_mod,
    parse_fasta,
    pi_digit_string,
    pi_digits,
    primes,
    prng_stream,
    read_oeis_bfile,
    relabel,
    sqrt2_digit_string,
)

BUNDLED_TABLES = ("sierpinski", "fern")
DEFAULT_CF_DIGITS = 10000
DEFAULT_PRNG_COUNT = 50000


@dataclass
class RunConfig:
    """Everything needed to reproduce one run, given the same input files."""

    subcommand: str
    source: str = None
    table: str = None
    inputs: list = field(default_factory=list)
    n: int = 50000
    ngon: int = None
    layout: str = None
    rate: float = None
    rate_rule: str = None
    labels: list = None
    alphabet: str = "dna"
    resolution: int = 512
    window: list = None
    mode: str = "binary"
    seed: int = 0
    burn_in: int = DEFAULT_BURN_IN
    dims: int = 2
    out: str = None
    orbit_out: str = None
    csv_out: str = None
    matrix_out: str = None
    embedding_out: str = None

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            return cls(**json.loads(text))
        except (TypeError, json.JSONDecodeError) as exc:
            raise InputError(f"not a run configuration: {exc}") from None


# ---------------------------------------------------------------- sources


def _split_mod(spec):
    head, sep, tail = spec.partition(" mod ")
    if not sep:
        return spec.strip(), None
    try:
        return head.strip(), int(tail)
    except ValueError:
        raise InputError(f"bad modulus in {spec!r}") from None


def _cf_values(name, digits):
    if name == "pi":
        text = pi_digit_string()
        whole, frac = text.split(".")
        return cf_partial_quotients_decimal(f"{whole}.{frac[:digits]}", uncertainty="truncated")
    if name == "e":
        return cf_partial_quotients_decimal(e_digit_string(digits), uncertainty="truncated")
    if name == "sqrt2":
        return cf_partial_quotients_decimal(sqrt2_digit_string(digits), uncertainty="truncated")
    try:
        return cf_partial_quotients_rational(Fraction(name))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"unknown continued-fraction source {name!r}") from None


def integer_values(kind, arg):
    """Raw integer stream for the integer-valued source kinds."""
    if kind == "bfile":
        return read_oeis_bfile(arg)
    if kind == "pi":
        return pi_digits(int(arg) if arg else None)
    if kind == "fib":
        raise AssertionError("fib is reduced while generated")
    if kind == "primes":
        limit, _, offset = arg.partition(",")
        return primes(int(limit), int(offset or 0))
    if kind == "cf":
        name, _, digits = arg.partition(":")
        return _cf_values(name, int(digits) if digits else DEFAULT_CF_DIGITS)
    raise InputError(f"unknown source kind {kind!r}")


def build_sequence(cfg):
    """Resolve ``cfg.source`` to ``(SymbolSequence, skipped_count)``."""
    spec, modulus = _split_mod(cfg.source)
    kind, _, arg = spec.partition(":")
    try:
        if kind == "fasta":
            alphabet = ALPHABETS[cfg.alphabet]
            rec = parse_fasta(Path(arg).read_bytes(), alphabet)[0]
            return rec.sequence, rec.skipped
        if kind == "prng":
            seed_s, _, count = arg.partition(":")
            m = cfg.ngon or (len(cfg.labels) if cfg.labels else 4)
            seed = int(seed_s) if seed_s else cfg.seed
            return prng_stream(seed, int(count or DEFAULT_PRNG_COUNT), m), 0
        if modulus is None:
            raise InputError(f"source {cfg.source!r} needs a ' mod M' suffix")
        if modulus < 2:
            raise InputError("modulus must be at least 2")
        if kind == "fib":
            seq = fibonacci_mod(int(arg), modulus)
            values = seq.symbols.tolist()
        else:
            values = [v % modulus for v in integer_values(kind, arg)]
    except (ValueError, KeyError) as exc:
        if isinstance(exc, (InputError, ContractError)):
            raise
        raise InputError(f"bad source {cfg.source!r}: {exc}") from None
    if not values:
        raise InputError(f"source {cfg.source!r} produced no values")
    if cfg.labels:
        symbols, skipped = relabel(values, cfg.labels)
        return SymbolSequence(len(cfg.labels), symbols, cfg.source), skipped
    return SymbolSequence(modulus, np.array(values, dtype=np.int64), cfg.source), 0


def resolve_rate(cfg, n):
    if cfg.rate is not None:
        return float(cfg.rate)
    rule = cfg.rate_rule or "almeida"
    if cfg.rate_rule is None and n == 4:
        return 0.5
    if rule == "fiser":
        return cg.dividing_rate_fiser(n)
    if rule == "almeida":
        return cg.dividing_rate_almeida(n)
    raise InputError(f"unknown rate rule {rule!r}")


def build_polygon(cfg, n, dna):
    layout = cfg.layout or ("unit-square" if dna and n == 4 else "square-corners" if n == 4 else "unit-circle")
    labels = tuple(cfg.labels or ())
    if dna and not labels:
        labels = ALPHABETS[cfg.alphabet].labels
    if layout == "unit-square":
        return cg.PolygonSpec.square(labels, unit=True)
    if layout == "square-corners":
        return cg.PolygonSpec.square(labels)
    if layout == "unit-circle":
        return cg.PolygonSpec.regular(n, labels)
    raise InputError(f"unknown layout {layout!r}")


# ---------------------------------------------------------------- commands


def _write(path, data):
    Path(path).write_bytes(data)


def _table_text(table):
    if table in BUNDLED_TABLES:
        return resources.files("cgrkit.data").joinpath(f"{table}.ifs").read_text()
    return Path(table).read_text(encoding="utf-8")


def run_ifs(cfg, echo):
    system = parse_ifs_table(_table_text(cfg.table))
    burn_in = min(cfg.burn_in, cfg.n - 1)
    orbit = ifs_iterate(system, cfg.n, seed=cfg.seed, burn_in=burn_in)
    image = rasterize(orbit, cfg.resolution, cfg.resolution, cfg.window, cfg.mode)
    xmin, xmax, ymin, ymax = orbit.bounding_box()
    echo(f"points: {len(orbit.settled)} (of {len(orbit)}, burn-in {burn_in})")
    echo(f"bbox: x [{xmin!r}, {xmax!r}] y [{ymin!r}, {ymax!r}]")
    for w in orbit.warnings:
        echo(f"warning: {w}")
    if cfg.out:
        _write(cfg.out, encode_image(image, cfg.out))
    if cfg.orbit_out:
        _write(cfg.orbit_out, dump_orbit(orbit))
    return image


def render_sequence(cfg, seq, dna):
    n = cfg.ngon or seq.alphabet_size
    if seq.alphabet_size != n:
        raise ContractError(
            f"stream has {seq.alphabet_size} symbols but the polygon has {n} vertices; "
            "change the modulus, --ngon, or pass --labels"
        )
    polygon = build_polygon(cfg, n, dna)
    # keep at least the final point of very short sequences
    burn_in = min(cfg.burn_in, len(seq))
    config = cg.ChaosGameConfig(polygon, resolve_rate(cfg, n), burn_in=burn_in)
    orbit = cg.cgr_orbit(config, seq)
    window = cfg.window or polygon.bounding_box
    image = rasterize(orbit, cfg.resolution, cfg.resolution, window, cfg.mode)
    return config, orbit, image


def run_cgr(cfg, echo):
    seq, skipped = build_sequence(cfg)
    dna = cfg.source.startswith("fasta:") and cfg.alphabet == "dna"
    config, orbit, image = render_sequence(cfg, seq, dna)
    echo(f"symbols: {len(seq)} (skipped {skipped})")
    echo(f"polygon: {config.polygon.n}-gon {config.polygon.layout}, labels {','.join(config.polygon.labels)}")
    echo(f"rate: {config.r!r}")
    if cfg.out:
        _write(cfg.out, encode_image(image, cfg.out))
        orbit_out = cfg.orbit_out or str(Path(cfg.out).with_suffix(".orbit"))
        _write(orbit_out, dump_orbit(orbit))
    elif cfg.orbit_out:
        _write(cfg.orbit_out, dump_orbit(orbit))
    if cfg.csv_out:
        Path(cfg.csv_out).write_text(orbit_csv(orbit.points))
    return image


def _load_inputs(cfg):
    images, labels = [], []
    for path in cfg.inputs:
        p = Path(path)
        data = p.read_bytes()
        if data.lstrip()[:1] in (b">", b";"):
            records = parse_fasta(data, ALPHABETS[cfg.alphabet])
            for rec in records:
                sub = dataclasses.replace(cfg, ngon=None, layout=None, window=None)
                *_, image = render_sequence(sub, rec.sequence, cfg.alphabet == "dna")
                images.append(image)
                tag = rec.header.split()[0] if rec.header else str(len(labels))
                labels.append(p.stem if len(records) == 1 else f"{p.stem}:{tag}")
        else:
            images.append(read_image(data))
            labels.append(p.stem)
    return images, labels


def run_distmap(cfg, echo):
    if len(cfg.inputs) < 2:
        raise InputError("distmap needs at least two inputs")
    images, labels = _load_inputs(cfg)
    if len(images) < 2:
        raise InputError("distmap needs at least two images")
    d = distance_matrix(images, labels)
    emb = classical_mds(d, min(cfg.dims, d.size - 1))
    echo(d.to_csv().rstrip())
    if emb.negative_ratio:
        echo(f"non-Euclidean input: |lambda_min|/lambda_max = {emb.negative_ratio:.3g}")
    if cfg.matrix_out:
        text = d.to_json() if cfg.matrix_out.endswith(".json") else d.to_csv()
        Path(cfg.matrix_out).write_text(text)
    if cfg.embedding_out:
        Path(cfg.embedding_out).write_text(emb.to_csv())
    return d, emb


COMMANDS = {"ifs": run_ifs, "cgr": run_cgr, "distmap": run_distmap}


def run(cfg, echo=print):
    echo(cfg.to_json())
    return COMMANDS[cfg.subcommand](cfg, echo)


# ---------------------------------------------------------------- parsing


def _csv_floats(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("window needs xmin,xmax,ymin,ymax")
    return vals


def _common(p):
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN, dest="burn_in")
    p.add_argument("--resolution", type=int, default=512, help="raster side in pixels")
    p.add_argument("--mode", choices=("binary", "log-count"), default="binary")


def _polygon_args(p):
    p.add_argument("--ngon", type=int, help="number of vertices (default: alphabet size)")
    p.add_argument("--layout", choices=("square-corners", "unit-square", "unit-circle"))
    p.add_argument("--rate", type=float, help="explicit dividing rate, overrides --rate-rule")
    p.add_argument("--rate-rule", choices=("fiser", "almeida"), dest="rate_rule")
    p.add_argument("--alphabet", choices=sorted(ALPHABETS), default="dna")


def make_parser():
    parser = argparse.ArgumentParser(
        prog="cgrkit", description=__doc__.split("\n")[0], epilog=__doc__.split("\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("ifs", help="draw an IFS attractor by random iteration")
    p.add_argument("table", help="IFS table file, or a bundled name: " + ", ".join(BUNDLED_TABLES))
    p.add_argument("--n", type=int, default=50000, help="number of orbit points")
    p.add_argument("--window", type=_csv_floats)
    p.add_argument("--out")
    p.add_argument("--orbit-out", dest="orbit_out")
    _common(p)

    p = sub.add_parser("cgr", help="chaos-game representation of a symbol source")
    p.add_argument("source", help="source spec, see the top-level help")
    p.add_argument("--labels", type=lambda s: s.split(","), help="comma-separated vertex labels")
    p.add_argument("--window", type=_csv_floats)
    p.add_argument("--out")
    p.add_argument("--orbit-out", dest="orbit_out")
    p.add_argument("--csv-out", dest="csv_out")
    _polygon_args(p)
    _common(p)

    p = sub.add_parser("distmap", help="DSSIM distance matrix and MDS map of images or FASTA files")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--rate", type=float)
    p.add_argument("--rate-rule", choices=("fiser", "almeida"), dest="rate_rule")
    p.add_argument("--alphabet", choices=sorted(ALPHABETS), default="dna")
    p.add_argument("--matrix-out", dest="matrix_out")
    p.add_argument("--embedding-out", dest="embedding_out")
    _common(p)

    p = sub.add_parser("replay", help="rerun a configuration printed by an earlier run")
    p.add_argument("config", help="JSON file holding a printed RunConfig")
    return parser


def config_from_args(args):
    if args.subcommand == "replay":
        return RunConfig.from_json(Path(args.config).read_text())
    names = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in names})


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        run(cfg)
    except ContractError as exc:
        print(f"cgrkit: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError, ValueError) as exc:
        print(f"cgrkit: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
