"""Slow reference implementations used only by the tests."""

import itertools
import sys

import numpy as np


def dilate_by_definition(occ, offsets):
    """z is set iff z - o is set for some offset o (out-of-range sources ignored)."""
    out = np.zeros_like(occ, dtype=bool)
    shape = occ.shape
    for z in itertools.product(*(range(n) for n in shape)):
        for o in offsets:
            src = tuple(a - b for a, b in zip(z, o))
            if all(0 <= s < n for s, n in zip(src, shape)) and occ[src]:
                out[z] = True
                break
    return out


def flood_fill_partition(occ, full):
    """Partition of the set cells into components, by recursive flood fill."""
    dim = occ.ndim
    if full:
        nbrs = [o for o in itertools.product((-1, 0, 1), repeat=dim) if any(o)]
    else:
        nbrs = [tuple(s if i == d else 0 for i in range(dim)) for d in range(dim) for s in (-1, 1)]
    seen = np.zeros(occ.shape, dtype=bool)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, occ.size * 4 + 100))

    def fill(c, acc):
        seen[c] = True
        acc.append(c)
        for o in nbrs:
            n = tuple(a + b for a, b in zip(c, o))
            if all(0 <= x < s for x, s in zip(n, occ.shape)) and occ[n] and not seen[n]:
                fill(n, acc)

    parts = []
    try:
        for c in itertools.product(*(range(n) for n in occ.shape)):
            if occ[c] and not seen[c]:
                acc = []
                fill(c, acc)
                parts.append(frozenset(acc))
    finally:
        sys.setrecursionlimit(old)
    return set(parts)


def partition_of_labels(labels):
    parts = {}
    for c in zip(*np.nonzero(labels)):
        parts.setdefault(int(labels[c]), set()).add(tuple(int(x) for x in c))
    return {frozenset(p) for p in parts.values()}


def component_distances(point, labeled):
    """Minimum distance from a scaled point to every component, brute force."""
    out = []
    for cells in labeled.components:
        d = np.sqrt(((cells - np.asarray(point)) ** 2).sum(axis=1))
        out.append(d.min())
    return np.array(out)


def nearest_cell_bruteforce(labels):
    """Per grid cell: squared distance to the nearest labeled cell and the
    set of component ids attaining it."""
    coords = np.argwhere(labels > 0)
    labs = labels[labels > 0]
    dist = np.empty(labels.shape)
    best = np.empty(labels.shape, dtype=object)
    for c in itertools.product(*(range(n) for n in labels.shape)):
        d2 = ((coords - np.array(c)) ** 2).sum(axis=1)
        m = d2.min()
        dist[c] = m
        best[c] = set(labs[d2 == m].tolist())
    return dist, best
