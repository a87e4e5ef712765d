"""Best-match accuracy, per-cluster counts and a Lloyd K-means baseline."""

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientPoints, ShapeError, Unsupported
from .scaling import as_dataset

__all__ = ["AccuracyReport", "accuracy_tp", "cluster_counts", "kmeans", "MAX_MATCH_K"]

MAX_MATCH_K = 10


@dataclass(frozen=True)
class AccuracyReport:
    accuracy: float
    mapping: dict
    counts: list
    noise: int


def cluster_counts(labels, k):
    """Return ``(counts, noise)``: points per id ``1..k`` and points labeled 0."""
    labels = np.asarray(labels, dtype=np.int64)
    top = max(k, int(labels.max(initial=0)))
    bins = np.bincount(labels, minlength=top + 1)
    return bins[1:k + 1].tolist(), int(bins[0])


def _best_matching(conf):
    """Exact maximum-weight injective matching of rows into columns.

    Dynamic program over subsets of used columns; ``conf`` has one row per
    predicted id and one column per ground-truth id.
    """
    rows, cols = conf.shape
    size = 1 << cols
    masks = np.arange(size)
    table = np.full((rows + 1, size), -1, dtype=np.int64)
    table[0, 0] = 0
    for r in range(rows):
        cur = table[r].copy()
        for c in range(cols):
            bit = 1 << c
            src = masks[(masks & bit) == 0]
            ok = table[r, src] >= 0
            cand = table[r, src[ok]] + conf[r, c]
            np.maximum.at(cur, src[ok] | bit, cand)
        table[r + 1] = cur
    mask = int(np.argmax(table[rows]))
    total = int(table[rows, mask])
    mapping = {}
    for r in range(rows, 0, -1):
        if table[r - 1, mask] == table[r, mask]:
            continue
        for c in range(cols):
            bit = 1 << c
            if mask & bit and table[r - 1, mask ^ bit] >= 0 and \
                    table[r - 1, mask ^ bit] + conf[r - 1, c] == table[r, mask]:
                mapping[r - 1] = c
                mask ^= bit
                break
    return total, mapping


def accuracy_tp(pred, gt, k):
    """Fraction of points whose predicted id maps onto their true id.

    The map from predicted to ground-truth ids is the injective one with the
    most agreements. Predictions labeled 0 (noise) are always wrong.
    """
    pred = np.asarray(pred, dtype=np.int64)
    gt = np.asarray(gt, dtype=np.int64)
    if pred.shape != gt.shape or pred.ndim != 1:
        raise ShapeError(f"label vectors differ in shape: {pred.shape} vs {gt.shape}")
    if k > MAX_MATCH_K:
        raise Unsupported(f"matching is limited to k <= {MAX_MATCH_K}")
    if np.any((gt < 1) | (gt > k)):
        raise ShapeError("ground-truth labels must lie in 1..k")
    if np.any(pred < 0):
        raise ShapeError("predicted labels must be >= 0")
    n = pred.size
    pred_ids = np.unique(pred[pred > 0])
    conf = np.zeros((pred_ids.size, k), dtype=np.int64)
    if pred_ids.size:
        row = np.searchsorted(pred_ids, pred[pred > 0])
        np.add.at(conf, (row, gt[pred > 0] - 1), 1)
    total, match = _best_matching(conf)
    mapping = {int(pred_ids[r]): c + 1 for r, c in match.items()}
    counts, noise = cluster_counts(pred, max(k, int(pred.max(initial=0))))
    return AccuracyReport(total / n if n else 1.0, mapping, counts, noise)


def _init_centers(data, k, rng):
    # seeded first center, then greedy farthest point
    centers = [data[rng.integers(data.shape[0])]]
    d2 = ((data - centers[0]) ** 2).sum(axis=1)
    for _ in range(1, k):
        centers.append(data[int(np.argmax(d2))])
        d2 = np.minimum(d2, ((data - centers[-1]) ** 2).sum(axis=1))
    return np.array(centers)


def kmeans(data, k, seed=0, max_iter=300):
    """Lloyd's algorithm. Returns labels in ``1..k``."""
    data = np.asarray(data, dtype=np.float64)
    if data.ndim == 2 and data.shape[1] in (2, 3):
        data = as_dataset(data)
    if data.shape[0] < k:
        raise InsufficientPoints(f"{data.shape[0]} points cannot form {k} clusters")
    rng = np.random.Generator(np.random.PCG64(seed))
    centers = _init_centers(data, k, rng)
    assign = None
    for _ in range(max_iter):
        d2 = ((data[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new = d2.argmin(axis=1)
        for j in range(k):
            if not np.any(new == j):
                # empty cluster: steal the point farthest from its own center
                far = int(np.argmax(d2[np.arange(data.shape[0]), new]))
                new[far] = j
                d2[far] = 0.0
        if assign is not None and np.array_equal(new, assign):
            break
        assign = new
        centers = np.array([data[assign == j].mean(axis=0) for j in range(k)])
    return assign + 1
