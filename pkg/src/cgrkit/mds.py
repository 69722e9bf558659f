"""Classical (Torgerson) multidimensional scaling with a cyclic Jacobi eigensolver."""

import csv
import io
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractError

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(a, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||a||_F``.  Returns ``(eigenvalues, eigenvectors)`` in descending
    eigenvalue order; eigenvectors are columns.
    """
    a = np.array(a, dtype=np.float64)
    n = len(a)
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return _sorted(np.diag(a).copy(), v)
    upper = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        # summed directly: ||a||^2 - ||diag||^2 cancels catastrophically
        off = np.sqrt(2.0 * np.sum(a[upper] ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        warnings.warn("Jacobi iteration hit the sweep limit before converging", RuntimeWarning, stacklevel=2)
    return _sorted(np.diag(a).copy(), v)


def _sorted(w, v):
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def double_center(sq):
    """``-1/2 J sq J`` with ``J = I - 11^T / n``."""
    sq = np.asarray(sq, dtype=np.float64)
    row = sq.mean(axis=1, keepdims=True)
    col = sq.mean(axis=0, keepdims=True)
    b = -0.5 * (sq - row - col + sq.mean())
    return (b + b.T) / 2.0


@dataclass(frozen=True)
class MdsEmbedding:
    coordinates: np.ndarray
    eigenvalues: np.ndarray
    labels: tuple
    negative_ratio: float = 0.0

    @property
    def dims(self):
        return self.coordinates.shape[1]

    def distances(self):
        diff = self.coordinates[:, None, :] - self.coordinates[None, :, :]
        return np.sqrt((diff**2).sum(axis=2))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label"] + [f"dim{i + 1}" for i in range(self.dims)])
        for lab, row in zip(self.labels, self.coordinates.tolist()):
            w.writerow([lab] + [repr(v) for v in row])
        return buf.getvalue()


def classical_mds(d, k=2, labels=None):
    """Embed a distance matrix in ``k`` dimensions.

    Coordinates are the top-``k`` eigenvectors of the double-centred squared
    distances, scaled by ``sqrt(max(lambda, 0))``; each column is flipped so
    its largest-magnitude entry is positive.  ``negative_ratio`` reports
    ``|lambda_min| / lambda_max`` when the input is not Euclidean.
    """
    if labels is None:
        labels = getattr(d, "labels", ())
    d = np.asarray(getattr(d, "values", d), dtype=np.float64)
    n = len(d)
    if d.ndim != 2 or d.shape != (n, n):
        raise ContractError(f"distance matrix must be square, got shape {d.shape}")
    scale = max(1.0, float(np.abs(d).max()) if d.size else 1.0)
    if np.abs(d - d.T).max() > 1e-12 * scale:
        raise ContractError("distance matrix is not symmetric")
    if np.abs(np.diag(d)).max() > 1e-12 * scale:
        raise ContractError("distance matrix has a nonzero diagonal")
    if not 1 <= k <= n - 1:
        raise ContractError(f"k must lie in [1, {n - 1}], got {k}")
    labels = tuple(labels) or tuple(str(i) for i in range(n))

    w, v = jacobi_eigh(double_center(d * d))
    coords = v[:, :k] * np.sqrt(np.clip(w[:k], 0.0, None))
    for j in range(k):
        i = int(np.argmax(np.abs(coords[:, j])))
        if coords[i, j] < 0:
            coords[:, j] = -coords[:, j]
    neg = 0.0
    if w[0] > 0 and w[-1] < 0:
        neg = float(-w[-1] / w[0])
    return MdsEmbedding(coords, w, labels, neg)
