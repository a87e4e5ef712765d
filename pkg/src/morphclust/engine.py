"""The dilate/label/filter loop and nearest-domain point assignment."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .components import (
    CONNECTIVITIES,
    filter_small_domains,
    keep_components,
    label_components,
    size_threshold,
)
from .errors import InsufficientComponents, InvalidData, NoComponents
from .morphology import dilate, init_grid, make_structuring_element
from .scaling import as_dataset, fit_scale, rasterize, scale_points, unscale_points

__all__ = [
    "ClusterConfig",
    "ClusterResult",
    "NearestHit",
    "NearestMap",
    "grow_until_k",
    "min_distance_to_component",
    "assign_labels",
    "auto_noise_threshold",
    "nearest_label_transform",
    "cluster",
]

log = logging.getLogger(__name__)

NOISE_MODES = ("none", "auto_paper", "auto_robust")
ASSIGN_MODES = ("bruteforce", "grid_transform")


@dataclass(frozen=True)
class ClusterConfig:
    """Parameters of one clustering run.

    ``noise_policy`` is ``"none"``, ``"auto_paper"``, ``"auto_robust"`` or a
    positive float giving a fixed distance threshold in scaled (grid) units.
    ``max_iter`` defaults to ``R // 2`` and ``se_kind`` to the unit disk or
    unit sphere matching the data dimension.
    """

    k: int
    R: int = 100
    max_iter: int = None
    se_kind: str = None
    connectivity: str = "full"
    noise_policy: object = "none"
    assignment_mode: str = "grid_transform"

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidData(f"k must be a positive integer, got {self.k}")
        if int(self.R) != self.R or self.R < 2:
            raise InvalidData(f"R must be an integer >= 2, got {self.R}")
        if self.max_iter is None:
            object.__setattr__(self, "max_iter", max(1, self.R // 2))
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise InvalidData(f"max_iter must be a positive integer, got {self.max_iter}")
        if self.connectivity not in CONNECTIVITIES:
            raise InvalidData(f"connectivity must be one of {CONNECTIVITIES}")
        if self.assignment_mode not in ASSIGN_MODES:
            raise InvalidData(f"assignment_mode must be one of {ASSIGN_MODES}")
        policy = self.noise_policy
        if isinstance(policy, str):
            if policy not in NOISE_MODES:
                raise InvalidData(f"unknown noise policy {policy!r}")
        elif not (isinstance(policy, (int, float)) and math.isfinite(policy) and policy > 0):
            raise InvalidData(f"a fixed noise threshold must be a positive number, got {policy!r}")

    def structuring_element(self, dim):
        kind = self.se_kind or ("disk" if dim == 2 else "sphere")
        return make_structuring_element(kind, dim)


@dataclass(frozen=True)
class NearestHit:
    distance: float
    cell: tuple
    component: int = None


@dataclass(frozen=True)
class NearestMap:
    """Per-cell nearest labeled cell, its distance and its component id.

    ``sites`` holds the nearest labeled cell as a flat C-order index into
    the grid (``-1`` if the grid has no labeled cell).
    """

    distance: np.ndarray
    labels: np.ndarray
    sites: np.ndarray

    def nearest_cell(self, cell):
        idx = tuple(int(c) - 1 for c in cell)
        site = int(self.sites[idx])
        return tuple(int(c) + 1 for c in np.unravel_index(site, self.sites.shape))


@dataclass(frozen=True)
class ClusterResult:
    labels: np.ndarray
    min_distances: np.ndarray
    iterations_used: int = 0
    component_count_trace: tuple = ()
    T_d_used: float = None
    labeled_grid: object = field(default=None, repr=False, compare=False)

    @property
    def num_clusters(self):
        return 0 if self.labeled_grid is None else self.labeled_grid.num_components


def _k_largest(lg, k):
    order = sorted(range(1, lg.num_components + 1), key=lambda j: (-lg.sizes[j - 1], j))
    return keep_components(lg, order[:k])


def grow_until_k(initial, cfg):
    """Dilate until exactly ``cfg.k`` domains remain.

    Each iteration dilates, labels, removes domains smaller than the mean
    domain size and counts what is left. Returns the final labeled grid and
    the count trace, whose first entry is the count before any dilation.

    If the count drops from above ``k`` to below it, or ``max_iter`` runs
    out first, the last labeling that still had at least ``k`` domains is
    cut down to its ``k`` largest.
    """
    se = cfg.structuring_element(initial.dim)
    lg = label_components(initial, cfg.connectivity)
    trace = [lg.num_components]
    if lg.num_components < cfg.k:
        raise InsufficientComponents(
            f"grid starts with {lg.num_components} domains, fewer than k={cfg.k}; "
            "dilation can only merge domains"
        )
    if lg.num_components == cfg.k:
        return lg, trace
    snapshot = lg
    g = initial
    for _ in range(cfg.max_iter):
        g = dilate(g, se)
        lg = label_components(g, cfg.connectivity)
        g, report = filter_small_domains(g, lg, size_threshold(lg))
        kept = sorted(set(range(1, lg.num_components + 1)) - set(report.removed_ids))
        lg = keep_components(lg, kept)
        trace.append(lg.num_components)
        if lg.num_components == cfg.k:
            return lg, trace
        if lg.num_components < cfg.k:
            log.debug("overshot k=%d at iteration %d", cfg.k, len(trace) - 1)
            break
        snapshot = lg
    return _k_largest(snapshot, cfg.k), trace


def min_distance_to_component(point, cells, component=None):
    """Nearest cell of one component to a scaled point.

    Ties go to the cell that comes first in raster order.
    """
    cells = np.asarray(cells, dtype=np.int64)
    if cells.size == 0:
        raise NoComponents("component has no cells")
    point = np.asarray(point, dtype=np.float64)
    cells = cells[np.lexsort(cells.T[::-1])]
    diff = point[None, :] - cells
    d2 = np.einsum("ij,ij->i", diff, diff)
    j = int(np.argmin(d2))
    return NearestHit(float(math.sqrt(d2[j])), tuple(cells[j].tolist()), component)


def auto_noise_threshold(min_distances, mode="auto_robust"):
    """Distance cutoff derived from the per-point minimum distances.

    ``auto_paper`` is the population variance of the distances;
    ``auto_robust`` is their mean plus three population standard deviations.
    """
    d = np.asarray(min_distances, dtype=np.float64)
    if d.size == 0:
        raise InvalidData("no distances given")
    mean = d.sum() / d.size
    var = ((d - mean) ** 2).sum() / d.size
    if mode == "auto_paper":
        return float(var)
    if mode == "auto_robust":
        return float(mean + 3.0 * math.sqrt(var))
    raise InvalidData(f"unknown automatic noise mode {mode!r}")


def _kernel_points(scaled):
    pts = np.asarray(scaled, dtype=np.float64) - 1.0
    if pts.shape[1] == 2:
        pts = np.hstack([pts, np.zeros((pts.shape[0], 1))])
    return np.ascontiguousarray(pts)


def nearest_label_transform(lg):
    if lg.num_components == 0:
        raise NoComponents("labeled grid has no components")
    lab3 = lg.as3d()
    dist2, sites = _backend.kernels.edt(lab3)
    labels = np.where(sites >= 0, lab3.ravel()[np.maximum(sites, 0)], 0).astype(np.int32)
    if lg.dim == 2:
        dist2, sites, labels = dist2[:, :, 0], sites[:, :, 0], labels[:, :, 0]
        # site indices into the padded grid equal indices into the 2D grid
    return NearestMap(np.sqrt(dist2), labels, sites)


def _nearest(scaled, lg, mode):
    pts = _kernel_points(scaled)
    lab3 = lg.as3d()
    if mode == "bruteforce":
        return _backend.kernels.nearest_brute(pts, lab3)
    dist2, _ = _backend.kernels.edt(lab3)
    return _backend.kernels.nearest_window(pts, lab3, np.ascontiguousarray(dist2))


def assign_labels(scaled, lg, noise_policy="none", mode="grid_transform"):
    """Label each scaled point with its nearest domain.

    Distance ties between domains go to the lower id. Under a noise policy
    a point is kept iff its distance is at most the threshold; otherwise
    its label is 0.
    """
    if lg.num_components == 0:
        raise NoComponents("labeled grid has no components")
    if mode not in ASSIGN_MODES:
        raise InvalidData(f"assignment mode must be one of {ASSIGN_MODES}")
    labels, d2, _ = _nearest(scaled, lg, mode)
    dist = np.sqrt(d2)
    labels = labels.astype(np.int64)
    if isinstance(noise_policy, str):
        t_d = None if noise_policy == "none" else auto_noise_threshold(dist, noise_policy)
    else:
        t_d = float(noise_policy)
    if t_d is not None:
        labels[dist > t_d] = 0
    return ClusterResult(labels=labels, min_distances=dist, T_d_used=t_d, labeled_grid=lg)


def cluster(data, cfg):
    """Cluster raw points end to end.

    Returns the :class:`ClusterResult` and the points mapped back to raw
    units, in input order.
    """
    data = as_dataset(data)
    params = fit_scale(data, cfg.R)
    scaled = scale_points(data, params)
    grid = init_grid(rasterize(scaled, cfg.R), cfg.R, data.shape[1])
    lg, trace = grow_until_k(grid, cfg)
    res = assign_labels(scaled, lg, cfg.noise_policy, cfg.assignment_mode)
    res = ClusterResult(
        labels=res.labels,
        min_distances=res.min_distances,
        iterations_used=len(trace) - 1,
        component_count_trace=tuple(trace),
        T_d_used=res.T_d_used,
        labeled_grid=lg,
    )
    return res, unscale_points(scaled, params)
