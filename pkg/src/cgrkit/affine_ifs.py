"""Planar affine maps, iterated function systems and the random iteration algorithm."""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError
from .orbit import Orbit
from .sources.prng import uniform_doubles

DEFAULT_BURN_IN = 20


@dataclass(frozen=True)
class AffineMap2D:
    """``w(x, y) = (a x + b y + e, c x + d y + f)`` chosen with probability ``p``."""

    a: float
    b: float
    c: float
    d: float
    e: float = 0.0
    f: float = 0.0
    p: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"probability {self.p} outside [0, 1]")

    def __call__(self, point):
        return affine_apply(self, point)

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def lipschitz(self):
        """Largest singular value of the linear part."""
        return float(np.linalg.norm(self.matrix, 2))

    def row(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f, self.p)


def affine_apply(m, point):
    x, y = point
    return (m.a * x + m.b * y + m.e, m.c * x + m.d * y + m.f)


@dataclass(frozen=True)
class PolarForm:
    r1: float
    theta1: float
    r2: float
    theta2: float

    def matrix(self):
        return np.array(
            [
                [self.r1 * math.cos(self.theta1), -self.r2 * math.sin(self.theta2)],
                [self.r1 * math.sin(self.theta1), self.r2 * math.cos(self.theta2)],
            ]
        )


def polar_decompose(a, b, c, d):
    """Write ``[[a, b], [c, d]]`` as column lengths and angles.

    ``(r1, theta1)`` are the polar coordinates of ``(a, c)``; ``(r2, theta2 + pi/2)``
    those of ``(b, d)``.  A zero column gets ``r = 0, theta = 0``.
    """
    r1 = math.hypot(a, c)
    r2 = math.hypot(b, d)
    theta1 = math.atan2(c, a) if r1 else 0.0
    theta2 = math.atan2(-b, d) if r2 else 0.0
    return PolarForm(r1, theta1, r2, theta2)


@dataclass(frozen=True)
class IfsSystem:
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        total = math.fsum(m.p for m in maps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"map probabilities sum to {total!r}, not 1")

    def __len__(self):
        return len(self.maps)

    @property
    def probabilities(self):
        return np.array([m.p for m in self.maps])

    @property
    def contractive(self):
        return all(m.lipschitz < 1.0 for m in self.maps)


def parse_ifs_table(text):
    """Parse an IFS table: one map per line as ``a b c d e f p``, ``#`` comments.

    Fields may be decimals or fractions such as ``1/3``.
    """
    maps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 7:
            raise InputError(f"expected 7 fields (a b c d e f p), got {len(fields)}", line=lineno)
        try:
            values = [float(Fraction(v)) for v in fields]
        except (ValueError, ZeroDivisionError):
            raise InputError(f"non-numeric field in {line!r}", line=lineno) from None
        try:
            maps.append(AffineMap2D(*values))
        except ValueError as exc:
            raise InputError(str(exc), line=lineno) from None
    if not maps:
        raise InputError("IFS table contains no maps")
    try:
        return IfsSystem(tuple(maps))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def format_ifs_table(system):
    lines = ["#  a b c d e f p"]
    lines += [" ".join(repr(v) for v in m.row()) for m in system.maps]
    return "\n".join(lines) + "\n"


def choose_maps(system, n, seed):
    """Map indices for ``n`` steps, by inverse CDF on one uniform draw per step."""
    cdf = np.cumsum(system.probabilities)
    u = uniform_doubles(seed, n)
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, len(system) - 1)


def ifs_iterate(system, n, seed=0, start=(0.0, 0.0), burn_in=DEFAULT_BURN_IN):
    """Random iteration algorithm: ``n`` points, the first being ``start``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    notes = ()
    if not system.contractive:
        notes = ("system contains a non-contractive map",)
        warnings.warn(notes[0], RuntimeWarning, stacklevel=2)
    coeffs = [m.row()[:6] for m in system.maps]
    choice = choose_maps(system, n - 1, seed).tolist()
    pts = np.empty((n, 2))
    x, y = float(start[0]), float(start[1])
    pts[0] = x, y
    for i, k in enumerate(choice, 1):
        a, b, c, d, e, f = coeffs[k]
        x, y = a * x + b * y + e, c * x + d * y + f
        pts[i] = x, y
    return Orbit(pts, (start[0], start[1]), burn_in, notes)
