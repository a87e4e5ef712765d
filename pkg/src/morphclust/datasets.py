"""Synthetic datasets: Gaussian blobs and two interleaved moons.

Both generators draw from ``numpy.random.Generator(PCG64(seed))``, so a
given seed reproduces the same points on every platform for a given numpy
release.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidData

__all__ = ["BlobSpec", "MoonsSpec", "PAPER_CENTERS", "generate_blobs", "generate_moons"]

PAPER_CENTERS = ((1.0, 1.0), (-1.0, -1.0), (1.0, -1.0))


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class BlobSpec:
    centers: tuple = PAPER_CENTERS
    spread: float = 0.6
    points_per_blob: int = 250
    seed: int = 0

    def __post_init__(self):
        if len(self.centers) < 1:
            raise InvalidData("need at least one center")
        if len({len(c) for c in self.centers}) != 1:
            raise InvalidData("all centers must have the same dimension")
        if not np.isfinite(self.spread) or self.spread < 0:
            raise InvalidData(f"spread must be finite and >= 0, got {self.spread}")
        if self.points_per_blob < 1:
            raise InvalidData("points_per_blob must be positive")


@dataclass(frozen=True)
class MoonsSpec:
    """Two half circles of equal ``radius``.

    The upper moon is centered at the origin; the lower one is centered at
    ``(radius, radius - gap)`` so each moon's tips sit ``gap`` away from the
    other arc.
    """

    points_per_moon: int = 200
    radius: float = 1.0
    gap: float = 0.3
    jitter: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.points_per_moon < 1 or self.radius <= 0 or self.gap < 0 or self.jitter < 0:
            raise InvalidData("moon parameters must be positive")


def generate_blobs(spec):
    """Isotropic Gaussian blobs; returns ``(points, labels)`` with labels 1..len(centers)."""
    rng = _rng(spec.seed)
    centers = np.asarray(spec.centers, dtype=np.float64)
    m = spec.points_per_blob
    pts = [c + spec.spread * rng.standard_normal((m, centers.shape[1])) for c in centers]
    labels = np.repeat(np.arange(1, len(centers) + 1), m)
    return np.vstack(pts), labels


def generate_moons(spec):
    rng = _rng(spec.seed)
    m, r = spec.points_per_moon, spec.radius
    t = np.linspace(0.0, np.pi, m)
    upper = np.stack([r * np.cos(t), r * np.sin(t)], axis=1)
    lower = np.stack([r - r * np.cos(t), (r - spec.gap) - r * np.sin(t)], axis=1)
    pts = np.vstack([upper, lower])
    if spec.jitter > 0:
        pts = pts + spec.jitter * rng.standard_normal(pts.shape)
    return pts, np.repeat([1, 2], m)
