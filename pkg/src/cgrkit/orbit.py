"""Point orbits and their on-disk forms.

Binary dump layout (little-endian)::

    b"CGR1"  u32 count  then count x (f64 x, f64 y)
"""

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

MAGIC = b"CGR1"
_HEADER = struct.Struct("<4sI")


@dataclass(frozen=True)
class Orbit:
    """Sequence of planar points; ``points[0]`` is the seed point.

    ``burn_in`` leading points are kept in ``points`` but left out of
    ``settled``, which is what rasters and statistics consume.
    """

    points: np.ndarray
    start: tuple
    burn_in: int = 0
    warnings: tuple = field(default=())

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64).reshape(-1, 2)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        if self.burn_in < 0:
            raise ValueError("burn_in must be non-negative")

    def __len__(self):
        return len(self.points)

    @property
    def settled(self):
        return self.points[self.burn_in :]

    def with_burn_in(self, burn_in):
        return Orbit(self.points, self.start, burn_in, self.warnings)

    def bounding_box(self):
        pts = self.settled
        if not len(pts):
            raise ValueError("orbit is empty after burn-in")
        (xmin, ymin), (xmax, ymax) = pts.min(axis=0), pts.max(axis=0)
        return float(xmin), float(xmax), float(ymin), float(ymax)


def dump_orbit(orbit):
    pts = np.ascontiguousarray(orbit.points, dtype="<f8")
    return _HEADER.pack(MAGIC, len(pts)) + pts.tobytes()


def load_orbit(data):
    if len(data) < _HEADER.size:
        raise InputError("orbit dump truncated before header")
    magic, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise InputError(f"bad orbit magic {magic!r}")
    expected = _HEADER.size + 16 * count
    if len(data) != expected:
        raise InputError(f"orbit dump is {len(data)} bytes, header implies {expected}")
    pts = np.frombuffer(data, dtype="<f8", offset=_HEADER.size).reshape(count, 2)
    start = tuple(pts[0]) if count else (0.0, 0.0)
    return Orbit(pts.astype(np.float64), start)


def orbit_csv(points):
    return "".join(f"{x!r},{y!r}\n" for x, y in np.asarray(points).tolist())
