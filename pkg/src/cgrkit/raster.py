"""Orbit rasterization and bit-exact PGM / 8-bit grayscale PNG encoding."""

import re
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, InputError
from .orbit import Orbit

MODES = ("binary", "log-count")


@dataclass(frozen=True)
class RasterImage:
    """Grayscale image, row-major with the top row first, intensities in [0, 1].

    ``window`` is ``(xmin, xmax, ymin, ymax)`` in world coordinates with y
    pointing up; ``dropped`` counts points that fell outside it.
    """

    pixels: np.ndarray
    window: tuple = (0.0, 1.0, 0.0, 1.0)
    dropped: int = 0

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.size == 0:
            raise ContractError(f"pixels must be a non-empty 2-D array, got shape {px.shape}")
        if np.any(px < 0.0) or np.any(px > 1.0) or np.any(np.isnan(px)):
            raise ContractError("intensities must lie in [0, 1]")
        object.__setattr__(self, "pixels", px)

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape


def auto_window(points):
    """Bounding box of ``points``; a degenerate side is widened to unit length."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if not len(pts):
        raise ContractError("cannot fit a window to zero points")
    (xmin, ymin), (xmax, ymax) = pts.min(axis=0), pts.max(axis=0)
    if xmax == xmin:
        xmin, xmax = xmin - 0.5, xmax + 0.5
    if ymax == ymin:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    return float(xmin), float(xmax), float(ymin), float(ymax)


def bin_counts(points, width, height, window):
    """Integer hit counts per pixel plus the number of points outside ``window``."""
    xmin, xmax, ymin, ymax = window
    if not (xmax > xmin and ymax > ymin):
        raise ContractError(f"window {window} has zero or negative area")
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    inside = (x >= xmin) & (x <= xmax) & (y >= ymin) & (y <= ymax)
    x, y = x[inside], y[inside]
    col = np.floor((x - xmin) / (xmax - xmin) * width).astype(np.int64)
    up = np.floor((y - ymin) / (ymax - ymin) * height).astype(np.int64)
    # the closing edge x == xmax lands in the last pixel
    np.clip(col, 0, width - 1, out=col)
    np.clip(up, 0, height - 1, out=up)
    row = height - 1 - up
    counts = np.bincount(row * width + col, minlength=width * height)
    return counts.reshape(height, width), int((~inside).sum())


def rasterize(orbit, width, height, window=None, mode="binary"):
    """Render points (an :class:`Orbit`'s settled part, or an ``(n, 2)`` array).

    ``binary`` marks any hit pixel with 1; ``log-count`` uses
    ``log(1 + c) / log(1 + c_max)``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    points = orbit.settled if isinstance(orbit, Orbit) else orbit
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if not len(points):
        raise ContractError("no points to rasterize (check burn-in)")
    if window is None:
        window = auto_window(points)
    window = tuple(float(v) for v in window)
    counts, dropped = bin_counts(points, width, height, window)
    if mode == "binary":
        pixels = (counts > 0).astype(np.float64)
    else:
        cmax = counts.max()
        if cmax == 0:
            pixels = np.zeros(counts.shape)
        else:
            pixels = np.log1p(counts) / np.log1p(cmax)
    return RasterImage(pixels, window, dropped)


def quantize(image):
    """8-bit levels, ``round(255 * v)`` with halves rounded up."""
    return np.floor(image.pixels * 255.0 + 0.5).astype(np.uint8)


def write_pgm(image):
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + quantize(image).tobytes()


_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n)*(\d+)")


def read_pgm(data):
    if data[:2] != b"P5":
        raise InputError("not a binary PGM (missing P5 magic)")
    pos = 2
    fields = []
    for _ in range(3):
        m = _PGM_TOKEN.match(data, pos)
        if not m:
            raise InputError("malformed PGM header")
        fields.append(int(m.group(1)))
        pos = m.end()
    width, height, maxval = fields
    if not 0 < maxval < 256:
        raise InputError(f"unsupported PGM maxval {maxval}")
    if not data[pos : pos + 1].isspace():
        raise InputError("PGM header must end with a single whitespace byte")
    pos += 1
    payload = data[pos : pos + width * height]
    if len(payload) != width * height:
        raise InputError(f"PGM payload has {len(payload)} bytes, expected {width * height}")
    levels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return RasterImage(levels / float(maxval))


PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _chunk(kind, body):
    crc = zlib.crc32(kind + body) & 0xFFFFFFFF
    return struct.pack(">I", len(body)) + kind + body + struct.pack(">I", crc)


def write_png(image):
    """8-bit grayscale PNG, filter type 0 on every row, default zlib level."""
    levels = quantize(image)
    raw = np.zeros((image.height, image.width + 1), dtype=np.uint8)
    raw[:, 1:] = levels
    ihdr = struct.pack(">IIBBBBB", image.width, image.height, 8, 0, 0, 0, 0)
    return (
        PNG_SIGNATURE
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", zlib.compress(raw.tobytes()))
        + _chunk(b"IEND", b"")
    )


def _paeth(a, b, c):
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    return b if pb <= pc else c


def _unfilter(raw, width, height):
    stride = width + 1
    out = np.zeros((height, width), dtype=np.uint8)
    prev = np.zeros(width, dtype=np.int64)
    for r in range(height):
        ftype = raw[r * stride]
        line = np.frombuffer(raw, dtype=np.uint8, count=width, offset=r * stride + 1).astype(np.int64)
        if ftype == 0:
            cur = line
        elif ftype == 1:
            cur = np.cumsum(line) % 256
        elif ftype == 2:
            cur = (line + prev) % 256
        elif ftype in (3, 4):
            cur = line.copy()
            left = 0
            for i in range(width):
                up = int(prev[i])
                if ftype == 3:
                    pred = (left + up) // 2
                else:
                    pred = _paeth(left, up, int(prev[i - 1]) if i else 0)
                left = cur[i] = (cur[i] + pred) % 256
        else:
            raise InputError(f"unknown PNG filter type {ftype} on row {r}")
        out[r] = cur
        prev = cur
    return out


def read_png(data):
    """Decode a non-interlaced 8-bit grayscale PNG."""
    if not data.startswith(PNG_SIGNATURE):
        raise InputError("not a PNG file")
    pos = len(PNG_SIGNATURE)
    header = None
    idat = []
    while pos < len(data):
        (length,) = struct.unpack_from(">I", data, pos)
        kind = data[pos + 4 : pos + 8]
        body = data[pos + 8 : pos + 8 + length]
        pos += 12 + length
        if kind == b"IHDR":
            header = struct.unpack(">IIBBBBB", body)
        elif kind == b"IDAT":
            idat.append(body)
        elif kind == b"IEND":
            break
    if header is None:
        raise InputError("PNG has no IHDR chunk")
    width, height, depth, color, _, _, interlace = header
    if depth != 8 or color != 0 or interlace != 0:
        raise InputError(f"only 8-bit non-interlaced grayscale PNG is supported (depth={depth}, color={color})")
    raw = zlib.decompress(b"".join(idat))
    if len(raw) != height * (width + 1):
        raise InputError("PNG image data has the wrong length")
    return RasterImage(_unfilter(raw, width, height) / 255.0)


def read_image(data):
    if data.startswith(PNG_SIGNATURE):
        return read_png(data)
    if data[:2] == b"P5":
        return read_pgm(data)
    raise InputError("unrecognized image format (expected PNG or binary PGM)")


def encode_image(image, path):
    """PNG for ``.png`` paths, PGM otherwise."""
    return write_png(image) if str(path).lower().endswith(".png") else write_pgm(image)
