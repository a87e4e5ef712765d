"""Mapping between raw coordinates, the scaled ``[0, R]`` box and grid cells."""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidData

__all__ = [
    "ScaleParams",
    "as_dataset",
    "fit_scale",
    "scale_points",
    "rasterize",
    "unscale_points",
]


def as_dataset(points):
    """Validate ``points`` and return them as a float64 ``(n, dim)`` array.

    ``dim`` must be 2 or 3, ``n`` at least 1 and every coordinate finite.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise InvalidData(f"expected an (n, 2) or (n, 3) array, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise InvalidData("dataset is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidData("dataset contains non-finite coordinates")
    return arr


@dataclass(frozen=True)
class ScaleParams:
    minimum: np.ndarray
    range: np.ndarray
    R: int

    @property
    def dim(self):
        return self.minimum.shape[0]

    @property
    def degenerate(self):
        return self.range == 0


def fit_scale(data, R):
    data = as_dataset(data)
    if int(R) != R or R < 2:
        raise InvalidData(f"grid resolution must be an integer >= 2, got {R}")
    lo = data.min(axis=0)
    hi = data.max(axis=0)
    return ScaleParams(minimum=lo, range=hi - lo, R=int(R))


def scale_points(data, params):
    """Shift and scale points into ``[0, R]`` per dimension.

    The denominator is the per-dimension range, so the minimum lands on 0
    and the maximum on ``R``. A dimension with zero range maps to ``R/2``.
    """
    data = as_dataset(data)
    if data.shape[1] != params.dim:
        raise InvalidData("dimension mismatch between data and scale parameters")
    safe = np.where(params.degenerate, 1.0, params.range)
    out = params.R * (data - params.minimum) / safe
    out[:, params.degenerate] = params.R / 2.0
    # guard against tiny overshoot when params come from a superset range
    return np.clip(out, 0.0, float(params.R))


def rasterize(scaled, R):
    """Round scaled coordinates half-up and clamp into ``1..R``.

    Returns the unique cells as an ``(m, dim)`` int64 array in raster
    (lexicographic) order.
    """
    scaled = np.asarray(scaled, dtype=np.float64)
    cells = np.floor(scaled + 0.5).astype(np.int64)
    np.clip(cells, 1, R, out=cells)
    return np.unique(cells, axis=0)


def unscale_points(scaled, params):
    scaled = np.asarray(scaled, dtype=np.float64)
    out = scaled * params.range / params.R + params.minimum
    # degenerate dimensions have range 0, so the product above already
    # collapses them back onto the minimum
    return out
