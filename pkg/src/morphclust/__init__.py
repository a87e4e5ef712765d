"""Clustering of 2D/3D point sets by morphological dilation on a grid.

Points are scaled onto an ``R``-cell grid, the occupied cells are dilated
until the grid holds the requested number of connected domains (small
domains are discarded along the way), and each point takes the id of its
nearest remaining domain.

The grid kernels come from a compiled extension when it is built and from
a numpy fallback otherwise; see :func:`get_backend`.
"""

from ._backend import get_backend, set_backend
from .components import (
    FilterReport,
    LabeledGrid,
    filter_small_domains,
    keep_components,
    label_components,
    size_threshold,
)
from .datasets import BlobSpec, MoonsSpec, generate_blobs, generate_moons
from .engine import (
    ClusterConfig,
    ClusterResult,
    NearestHit,
    NearestMap,
    assign_labels,
    auto_noise_threshold,
    cluster,
    grow_until_k,
    min_distance_to_component,
    nearest_label_transform,
)
from .errors import *  # noqa: F401,F403
from .io import read_csv, write_csv
from .metrics import AccuracyReport, accuracy_tp, cluster_counts, kmeans
from .morphology import Grid, StructuringElement, dilate, init_grid, make_structuring_element
from .scaling import ScaleParams, fit_scale, rasterize, scale_points, unscale_points
from .svg import emit_svg_scatter

__version__ = "0.1.0"
