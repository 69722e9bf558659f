"""Global SSIM / DSSIM between rasters and pairwise DSSIM distance matrices."""

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ContractError


@dataclass(frozen=True)
class SsimParams:
    """Exponents and stabilizing constants; ``None`` constants take the usual defaults.

    ``C1 = (0.01 L)^2``, ``C2 = (0.03 L)^2`` and ``C3 = C2 / 2``.
    """

    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    C1: float = None
    C2: float = None
    C3: float = None
    L: float = 1.0

    def __post_init__(self):
        if self.C1 is None:
            object.__setattr__(self, "C1", (0.01 * self.L) ** 2)
        if self.C2 is None:
            object.__setattr__(self, "C2", (0.03 * self.L) ** 2)
        if self.C3 is None:
            object.__setattr__(self, "C3", self.C2 / 2)
        if self.C1 <= 0 or self.C2 <= 0:
            raise ValueError("C1 and C2 must be positive")

    @property
    def simplifies(self):
        return self.alpha == self.beta == self.gamma == 1.0 and self.C3 == self.C2 / 2


DEFAULT_PARAMS = SsimParams()


@dataclass(frozen=True)
class ImageMoments:
    mu_x: float
    mu_y: float
    var_x: float
    var_y: float
    sigma_xy: float

    @property
    def sigma_x(self):
        return math.sqrt(self.var_x)

    @property
    def sigma_y(self):
        return math.sqrt(self.var_y)

    @property
    def sigma_x_sigma_y(self):
        # sqrt of the product so that x == y gives exactly var_x
        return math.sqrt(self.var_x * self.var_y)


def _pixels(img):
    return np.asarray(getattr(img, "pixels", img), dtype=np.float64)


def image_moments(x, y):
    """Whole-image means, (population) variances and covariance, two-pass."""
    a, b = _pixels(x), _pixels(y)
    if a.shape != b.shape:
        raise ContractError(f"image shapes differ: {a.shape} vs {b.shape}")
    mu_x, mu_y = float(a.mean()), float(b.mean())
    da, db = a - mu_x, b - mu_y
    return ImageMoments(
        mu_x,
        mu_y,
        float((da * da).mean()),
        float((db * db).mean()),
        float((da * db).mean()),
    )


def ssim_terms(m, params=DEFAULT_PARAMS):
    """Luminance, contrast and structure terms ``(l, c, s)``."""
    C1, C2, C3 = params.C1, params.C2, params.C3
    sxsy = m.sigma_x_sigma_y
    # plain products: float ** 2 goes through pow() and may differ from x * x
    lum = (2 * m.mu_x * m.mu_y + C1) / (m.mu_x * m.mu_x + m.mu_y * m.mu_y + C1)
    con = (2 * sxsy + C2) / (m.var_x + m.var_y + C2)
    st = (m.sigma_xy + C3) / (sxsy + C3)
    return lum, con, st


def ssim_global(x, y, params=DEFAULT_PARAMS):
    lum, con, st = ssim_terms(image_moments(x, y), params)
    value = lum**params.alpha * con**params.beta * st**params.gamma
    # each term is at most 1 in exact arithmetic; rounding can overshoot by an ulp
    return min(max(value, -1.0), 1.0)


def ssim_simplified(x, y, params=DEFAULT_PARAMS):
    """Closed form valid for unit exponents and ``C3 = C2 / 2``."""
    m = image_moments(x, y)
    C1, C2 = params.C1, params.C2
    num = (2 * m.mu_x * m.mu_y + C1) * (2 * m.sigma_xy + C2)
    den = (m.mu_x * m.mu_x + m.mu_y * m.mu_y + C1) * (m.var_x + m.var_y + C2)
    return num / den


def dssim(x, y, params=DEFAULT_PARAMS):
    return 1.0 - ssim_global(x, y, params)


@dataclass(frozen=True)
class DistanceMatrix:
    values: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        d = np.asarray(self.values, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ContractError(f"distance matrix must be square, got shape {d.shape}")
        labels = tuple(self.labels) or tuple(str(i) for i in range(len(d)))
        if len(labels) != len(d):
            raise ContractError(f"{len(labels)} labels for a {len(d)}x{len(d)} matrix")
        object.__setattr__(self, "values", d)
        object.__setattr__(self, "labels", labels)

    @property
    def size(self):
        return len(self.values)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.labels))
        for lab, row in zip(self.labels, self.values.tolist()):
            w.writerow([lab] + [repr(v) for v in row])
        return buf.getvalue()

    def to_json(self):
        return json.dumps({"labels": list(self.labels), "rows": self.values.tolist()})

    @classmethod
    def from_csv(cls, text):
        rows = list(csv.reader(io.StringIO(text)))
        labels = rows[0][1:]
        values = [[float(v) for v in row[1:]] for row in rows[1:]]
        return cls(np.array(values), tuple(labels))

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(np.array(obj["rows"], dtype=np.float64), tuple(obj["labels"]))


def _thread_cap():
    try:
        return max(1, int(os.environ.get("CGRKIT_THREADS", "1")))
    except ValueError:
        return 1


def distance_matrix(images, labels=(), params=DEFAULT_PARAMS, workers=None):
    """Pairwise DSSIM, one evaluation per unordered pair.

    ``workers`` defaults to ``CGRKIT_THREADS`` (1 if unset).  Each entry is
    computed by the same sequential code either way, so results do not depend
    on the worker count.
    """
    imgs = [_pixels(im) for im in images]
    n = len(imgs)
    if n < 2:
        raise ContractError("need at least two images")
    for i in range(1, n):
        if imgs[i].shape != imgs[0].shape:
            raise ContractError(
                f"image {i} has shape {imgs[i].shape}, image 0 has {imgs[0].shape} (pair (0, {i}))"
            )
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    workers = _thread_cap() if workers is None else workers
    job = lambda ij: dssim(imgs[ij[0]], imgs[ij[1]], params)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, pairs))
    else:
        results = [job(ij) for ij in pairs]
    d = np.zeros((n, n))
    for (i, j), v in zip(pairs, results):
        d[i, j] = d[j, i] = v
    return DistanceMatrix(d, tuple(labels))
