"""Connected-domain labeling and the small-domain filter."""

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import NoComponents
from .morphology import Grid

__all__ = [
    "LabeledGrid",
    "FilterReport",
    "label_components",
    "size_threshold",
    "filter_small_domains",
    "keep_components",
]

CONNECTIVITIES = ("face", "full")


@dataclass(frozen=True)
class LabeledGrid:
    """Component ids per cell (0 is background) plus per-id cell lists.

    ``components[j - 1]`` holds the 1-based cells of component ``j`` in
    raster order and ``sizes[j - 1]`` their count.
    """

    labels: np.ndarray
    components: list = field(repr=False)
    sizes: np.ndarray

    @property
    def num_components(self):
        return len(self.components)

    @property
    def dim(self):
        return self.labels.ndim

    @property
    def R(self):
        return self.labels.shape[0]

    def grid(self):
        return Grid(self.labels > 0)

    def as3d(self):
        lab = self.labels
        if lab.ndim == 2:
            lab = lab[:, :, None]
        return np.ascontiguousarray(lab, dtype=np.int32)

    @classmethod
    def from_labels(cls, labels):
        labels = np.ascontiguousarray(labels, dtype=np.int32)
        flat = labels.ravel()
        sites = np.flatnonzero(flat)
        ids = flat[sites]
        order = np.argsort(ids, kind="stable")
        sites, ids = sites[order], ids[order]
        n = int(ids.max()) if ids.size else 0
        sizes = np.bincount(ids, minlength=n + 1)[1:].astype(np.int64)
        cells = np.stack(np.unravel_index(sites, labels.shape), axis=1) + 1
        bounds = np.cumsum(sizes)[:-1] if n else []
        components = np.split(cells, bounds) if n else []
        return cls(labels=labels, components=components, sizes=sizes)


@dataclass(frozen=True)
class FilterReport:
    threshold: float
    removed_ids: tuple
    removed_cells: np.ndarray


def label_components(g, connectivity="full"):
    """Label connected domains with ids in first-encounter raster order.

    ``face`` uses 4/6-adjacency, ``full`` 8/26-adjacency.
    """
    if connectivity not in CONNECTIVITIES:
        raise ValueError(f"connectivity must be one of {CONNECTIVITIES}, got {connectivity!r}")
    lab3, _ = _backend.kernels.label(g.as3d(), connectivity == "full")
    labels = lab3[:, :, 0] if g.dim == 2 else lab3
    return LabeledGrid.from_labels(labels)


def size_threshold(lg):
    """Mean component size in cells."""
    if lg.num_components == 0:
        raise NoComponents("cannot compute a size threshold without components")
    return float(lg.sizes.sum()) / lg.num_components


def filter_small_domains(g, lg, threshold):
    """Clear every component strictly smaller than ``threshold``."""
    small = np.flatnonzero(lg.sizes < threshold) + 1
    mask = np.isin(lg.labels, small)
    occ = g.occupancy & ~mask
    removed = np.argwhere(mask) + 1
    return Grid(occ), FilterReport(float(threshold), tuple(small.tolist()), removed)


def keep_components(lg, ids):
    """Drop all components not in ``ids`` and renumber the rest 1..len(ids).

    Surviving components keep their relative order, so raster-order ids
    stay raster-ordered.
    """
    ids = np.sort(np.asarray(list(ids), dtype=np.int64))
    lut = np.zeros(lg.num_components + 1, dtype=np.int32)
    lut[ids] = np.arange(1, ids.size + 1, dtype=np.int32)
    return LabeledGrid.from_labels(lut[lg.labels])
