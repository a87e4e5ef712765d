"""Dense occupancy grids and binary dilation."""

import itertools
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import CellOutOfRange, EmptyGrid, InvalidElement

__all__ = ["Grid", "StructuringElement", "init_grid", "make_structuring_element", "dilate"]


@dataclass(frozen=True)
class Grid:
    """Boolean occupancy over cells ``1..R`` in each of ``dim`` axes.

    ``occupancy`` is stored zero-based: cell ``(x, y)`` lives at
    ``occupancy[x - 1, y - 1]``.
    """

    occupancy: np.ndarray

    @property
    def dim(self):
        return self.occupancy.ndim

    @property
    def R(self):
        return self.occupancy.shape[0]

    def __getitem__(self, cell):
        cell = tuple(int(c) for c in cell)
        if len(cell) != self.dim or not all(1 <= c <= self.R for c in cell):
            raise CellOutOfRange(f"cell {cell} outside 1..{self.R}")
        return bool(self.occupancy[tuple(c - 1 for c in cell)])

    def cells(self):
        """Occupied cells (1-based) in raster order."""
        return np.argwhere(self.occupancy) + 1

    def count(self):
        return int(np.count_nonzero(self.occupancy))

    def issubset(self, other):
        return not np.any(self.occupancy & ~other.occupancy)

    def as3d(self):
        occ = self.occupancy
        if occ.ndim == 2:
            occ = occ[:, :, None]
        return np.ascontiguousarray(occ, dtype=np.uint8)

    @classmethod
    def from3d(cls, arr, dim):
        if dim == 2:
            arr = arr[:, :, 0]
        return cls(np.ascontiguousarray(arr, dtype=bool))


@dataclass(frozen=True)
class StructuringElement:
    offsets: np.ndarray  # (s, dim) int64

    def __post_init__(self):
        offs = {tuple(o) for o in self.offsets.tolist()}
        if (0,) * self.offsets.shape[1] not in offs:
            raise InvalidElement("structuring element must contain the origin")
        if any(tuple(-c for c in o) not in offs for o in offs):
            raise InvalidElement("structuring element must be symmetric")

    @property
    def dim(self):
        return self.offsets.shape[1]

    def __len__(self):
        return self.offsets.shape[0]

    def as_set(self):
        return {tuple(o) for o in self.offsets.tolist()}


_KIND_DIM = {"disk": 2, "sphere": 3, "square3": 2, "cube3": 3}


def make_structuring_element(kind, dim):
    """Offsets for one of the named neighbourhoods.

    ``disk``/``sphere`` keep the integer offsets with squared norm <= 1;
    ``square3``/``cube3`` are the full ``3**dim`` blocks.
    """
    if kind not in _KIND_DIM:
        raise InvalidElement(f"unknown structuring element {kind!r}")
    if _KIND_DIM[kind] != dim:
        raise InvalidElement(f"{kind} is a {_KIND_DIM[kind]}D element, data is {dim}D")
    offs = [o for o in itertools.product((-1, 0, 1), repeat=dim)
            if kind in ("square3", "cube3") or sum(c * c for c in o) <= 1]
    return StructuringElement(np.array(offs, dtype=np.int64))


def origin_element(dim):
    return StructuringElement(np.zeros((1, dim), dtype=np.int64))


def init_grid(cells, R, dim):
    cells = np.asarray(cells, dtype=np.int64).reshape(-1, dim)
    if cells.shape[0] == 0:
        raise EmptyGrid("no cells to place on the grid")
    if np.any(cells < 1) or np.any(cells > R):
        bad = cells[np.any((cells < 1) | (cells > R), axis=1)][0]
        raise CellOutOfRange(f"cell {tuple(bad.tolist())} outside 1..{R}")
    occ = np.zeros((R,) * dim, dtype=bool)
    occ[tuple((cells - 1).T)] = True
    return Grid(occ)


def dilate(g, se):
    """Binary dilation with boundary clipping; ``g`` is left untouched."""
    if se.dim != g.dim:
        raise InvalidElement(f"{se.dim}D element applied to a {g.dim}D grid")
    offs = se.offsets
    if g.dim == 2:
        offs = np.hstack([offs, np.zeros((offs.shape[0], 1), dtype=np.int64)])
    out = _backend.kernels.dilate(g.as3d(), np.ascontiguousarray(offs, dtype=np.int64))
    return Grid.from3d(out, g.dim)
