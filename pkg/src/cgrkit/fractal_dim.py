import numpy as np


def box_counts(mask, sizes):
    """Number of ``s x s`` boxes holding at least one set pixel, for each ``s``.

    The grid is anchored at the top-left corner; partial boxes at the far
    edges count like full ones.
    """
    mask = np.asarray(mask) > 0
    out = []
    for s in sizes:
        rows = np.add.reduceat(mask, np.arange(0, mask.shape[0], s), axis=0)
        boxes = np.add.reduceat(rows, np.arange(0, mask.shape[1], s), axis=1)
        out.append(int(np.count_nonzero(boxes)))
    return out


def box_counting_dimension(image, sizes=(2, 4, 8, 16, 32, 64)):
    """Slope of ``log N(s)`` against ``log(1/s)`` over box sizes ``s`` in pixels.

    Returns ``(dimension, counts)``.
    """
    pixels = getattr(image, "pixels", image)
    counts = box_counts(pixels, sizes)
    if min(counts) == 0:
        raise ValueError("image is empty")
    slope, _ = np.polyfit(np.log(1.0 / np.asarray(sizes, float)), np.log(counts), 1)
    return float(slope), counts
