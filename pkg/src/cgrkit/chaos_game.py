"""Chaos-game representation on polygons, dividing rates and CGR address decoding."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .orbit import Orbit
from .raster import RasterImage

DEFAULT_BURN_IN = 20

# clockwise from the bottom-left corner
_SQUARE = ((-1.0, -1.0), (-1.0, 1.0), (1.0, 1.0), (1.0, -1.0))
LAYOUTS = ("square-corners", "unit-square", "unit-circle", "custom")


@dataclass(frozen=True)
class PolygonSpec:
    """Vertices the chaos game moves toward, one per symbol.

    Use the constructors :meth:`square`, :meth:`regular` or :meth:`from_vertices`.
    """

    n: int
    layout: str
    vertices: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=np.float64).reshape(-1, 2)
        if self.n < 3 or len(verts) != self.n:
            raise ContractError(f"need n >= 3 vertices, got n={self.n} with {len(verts)} points")
        if self.layout not in LAYOUTS:
            raise ContractError(f"unknown layout {self.layout!r}")
        if self.layout in ("square-corners", "unit-square") and self.n != 4:
            raise ContractError("square layouts need exactly 4 vertices")
        labels = tuple(str(v) for v in self.labels) or tuple(str(i) for i in range(self.n))
        if len(labels) != self.n:
            raise ContractError(f"{len(labels)} labels for {self.n} vertices")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def square(cls, labels=(), unit=False):
        """Square with vertices clockwise from bottom-left, on [-1, 1]^2 or [0, 1]^2."""
        verts = np.array(_SQUARE)
        if unit:
            return cls(4, "unit-square", (verts + 1.0) / 2.0, tuple(labels))
        return cls(4, "square-corners", verts, tuple(labels))

    @classmethod
    def regular(cls, n, labels=()):
        """Regular n-gon on the unit circle, vertex 0 at the top, indices running clockwise."""
        if n < 3:
            raise ContractError(f"a polygon needs at least 3 vertices, got {n}")
        angles = math.pi / 2 - 2 * math.pi * np.arange(n) / n
        verts = np.column_stack([np.cos(angles), np.sin(angles)])
        return cls(n, "unit-circle", verts, tuple(labels))

    @classmethod
    def from_vertices(cls, vertices, labels=()):
        verts = np.asarray(vertices, dtype=np.float64)
        return cls(len(verts), "custom", verts, tuple(labels))

    @property
    def centroid(self):
        return tuple(self.vertices.mean(axis=0).tolist())

    @property
    def bounding_box(self):
        (xmin, ymin), (xmax, ymax) = self.vertices.min(axis=0), self.vertices.max(axis=0)
        return float(xmin), float(xmax), float(ymin), float(ymax)

    def contains(self, point, tol=1e-12):
        """Whether ``point`` lies in the convex hull of the vertices (closed)."""
        from scipy.spatial import ConvexHull

        hull = ConvexHull(self.vertices)
        # hull.equations rows are (normal, offset) with normal . x + offset <= 0 inside
        p = np.asarray(point, dtype=np.float64)
        return bool(np.all(hull.equations[:, :2] @ p + hull.equations[:, 2] <= tol))


def dividing_rate_fiser(n):
    """Rate ``1 / (1 + sin(pi / n))``: the largest r keeping the n sub-polygons disjoint."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    return 1.0 / (1.0 + math.sin(math.pi / n))


def _round_half_away(x):
    return math.floor(x + 0.5) if x >= 0 else -math.floor(-x + 0.5)


def dividing_rate_almeida(n):
    """Rate giving the tightest packing of non-overlapping sub-polygons of a regular n-gon."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    k = _round_half_away((n + 1) / 4)
    h = math.pi / (2 * n)
    edge = 2.0 * math.cos(math.pi * (0.5 - k / n))
    correction = (
        2.0
        * math.cos(math.pi * (0.5 - 1.0 / (2 * n)))
        * math.cos((2 * k - 1) * h)
        * (1.0 + math.tan((2 * k - 1) * h) / math.tan(math.pi - (n + 2 * k - 2) * h))
    )
    return (edge - correction) / edge


@dataclass(frozen=True)
class ChaosGameConfig:
    polygon: PolygonSpec
    r: float = 0.5
    start: tuple = None
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ContractError(f"dividing rate must lie strictly in (0, 1), got {self.r}")
        if self.burn_in < 0:
            raise ContractError("burn_in must be non-negative")
        start = self.polygon.centroid if self.start is None else tuple(map(float, self.start))
        if not self.polygon.contains(start):
            raise ContractError(f"start point {start} lies outside the polygon")
        object.__setattr__(self, "start", start)


def cgr_orbit(config, seq):
    """Play the chaos game: ``p_m = (1 - r) p_{m-1} + r v(s_m)``.

    The returned orbit has ``len(seq) + 1`` points; ``points[0]`` is the start
    and ``points[m]`` the point after symbol ``m``.
    """
    symbols = seq.symbols if hasattr(seq, "symbols") else np.asarray(seq, dtype=np.int64)
    if len(symbols) == 0:
        raise ContractError("symbol sequence is empty")
    n = config.polygon.n
    bad = np.flatnonzero((symbols < 0) | (symbols >= n))
    if bad.size:
        i = int(bad[0])
        raise ContractError(f"symbol {int(symbols[i])} at position {i} has no vertex on a {n}-gon")
    r = config.r
    q = 1.0 - r
    vx = config.polygon.vertices[:, 0].tolist()
    vy = config.polygon.vertices[:, 1].tolist()
    pts = np.empty((len(symbols) + 1, 2))
    x, y = config.start
    pts[0] = x, y
    for m, s in enumerate(symbols.tolist(), 1):
        x = q * x + r * vx[s]
        y = q * y + r * vy[s]
        pts[m] = x, y
    return Orbit(pts, config.start, config.burn_in)


@dataclass(frozen=True)
class QuadrantAddress:
    """Trailing symbols that lead to a point, most recent first."""

    symbols: tuple

    def __len__(self):
        return len(self.symbols)

    def labels(self, polygon):
        return [polygon.labels[s] for s in self.symbols]


DNA_SQUARE = PolygonSpec.square(("A", "C", "G", "T"), unit=True)


def quadrant_decode(point, depth, polygon=DNA_SQUARE):
    """Recover the last ``depth`` symbols of a square CGR played at r = 0.5.

    Each step reads the quadrant the point sits in, then undoes the move
    toward that corner.  A point on a quadrant boundary has no well-defined
    address and raises :class:`ContractError`.
    """
    if polygon.n != 4 or polygon.layout not in ("square-corners", "unit-square"):
        raise ContractError("quadrant decoding needs a square polygon")
    xmin, xmax, ymin, ymax = polygon.bounding_box
    x, y = float(point[0]), float(point[1])
    if not (xmin < x < xmax and ymin < y < ymax):
        raise ContractError(f"point {point} is not strictly inside the square")
    xmid, ymid = (xmin + xmax) / 2, (ymin + ymax) / 2
    corner = {(vx > xmid, vy > ymid): i for i, (vx, vy) in enumerate(polygon.vertices.tolist())}
    out = []
    for level in range(depth):
        if x == xmid or y == ymid:
            raise ContractError(f"point lies on a sub-square boundary at depth {level + 1}")
        s = corner[(x > xmid, y > ymid)]
        out.append(s)
        vx, vy = polygon.vertices[s]
        x, y = 2.0 * x - vx, 2.0 * y - vy
    return QuadrantAddress(tuple(out))


def cell_addresses(points, config, depth):
    """Depth-``depth`` addresses of many points for any polygon and rate.

    Each point is assigned to the sub-polygon ``w_s(P)`` whose centre
    ``(1 - r) c + r v_s`` is nearest, then mapped back through ``w_s``.  This
    is exact when the sub-polygons do not overlap (r at or above the Fiser
    rate).  Returns an ``(N, depth)`` int array, most recent symbol first.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2).copy()
    verts = config.polygon.vertices
    r = config.r
    centres = (1.0 - r) * np.asarray(config.polygon.centroid) + r * verts
    out = np.empty((len(pts), depth), dtype=np.int64)
    for level in range(depth):
        d2 = ((pts[:, None, :] - centres[None, :, :]) ** 2).sum(axis=2)
        s = d2.argmin(axis=1)
        out[:, level] = s
        pts = (pts - r * verts[s]) / (1.0 - r)
    return out


def cell_frequencies(orbit, config, depth=2):
    """Relative occupancy of each depth-``depth`` cell over the settled orbit.

    Indexed by ``sum(s_j * n**(depth-1-j))`` with ``s_0`` the most recent symbol.
    """
    n = config.polygon.n
    addr = cell_addresses(orbit.settled, config, depth)
    weights = n ** np.arange(depth - 1, -1, -1)
    counts = np.bincount(addr @ weights, minlength=n**depth)
    return counts / counts.sum()


_C, _G = 1, 2


def _dna_cell_symbols(ix, iy, depth):
    # bit pair (x, y) of level j, most significant first -> A/C/G/T index
    lookup = np.array([[0, 1], [3, 2]])
    levels = []
    for j in range(depth):
        shift = depth - 1 - j
        levels.append(lookup[(ix >> shift) & 1, (iy >> shift) & 1])
    return levels


def cg_suppressed_mask(depth, resolution):
    """DNA CGR of every word that avoids the dinucleotide CG.

    A cell of the ``2**depth`` grid is filled (1) unless its address holds a
    C immediately followed in time by a G; those cells are left blank (0).
    Pixels are assigned to the cell containing their centre.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    cells = 1 << depth
    idx = np.arange(resolution)
    # floor(((2i + 1) / (2 res)) * 2**depth) in exact integer arithmetic
    cell_of = ((2 * idx + 1) * cells) // (2 * resolution)
    ix = cell_of[None, :].repeat(resolution, axis=0)
    iy = cell_of[::-1][:, None].repeat(resolution, axis=1)
    syms = _dna_cell_symbols(ix, iy, depth)
    blank = np.zeros_like(ix, dtype=bool)
    # syms[j] is newer than syms[j + 1]
    for j in range(depth - 1):
        blank |= (syms[j + 1] == _C) & (syms[j] == _G)
    return RasterImage((~blank).astype(np.float64), (0.0, 1.0, 0.0, 1.0))
