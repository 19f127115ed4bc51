"""Point clouds, metric queries and the ball split around a basepoint."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np


class MalformedInput(ValueError):
    """Raised when point data cannot form a valid cloud."""


@dataclass(frozen=True)
class PointCloud:
    """A finite sample of points in Euclidean space.

    Point order is significant: row ``i`` is vertex ``i`` in every complex
    built from the cloud.
    """

    points: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if pts.size else pts.reshape(0, 1)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise MalformedInput(f"points must form an (n, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise MalformedInput("point coordinates must be finite")
        if self.labels is not None and len(self.labels) != len(pts):
            raise MalformedInput("one label per point required")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], labels=None) -> "PointCloud":
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise MalformedInput("all points must share the same dimension")
        return cls(np.array(rows, dtype=float), labels)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def subcloud(self, indices) -> "PointCloud":
        idx = sorted(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return PointCloud(self.points[idx], labels)


@dataclass(frozen=True)
class LocalQuery:
    """Parameters of a local homology query at ``basepoint``.

    ``radius`` is the ball radius, ``epsilon`` the asserted sample density,
    ``max_scale`` the largest filtration parameter considered and ``max_dim``
    the top homological dimension reported.
    """

    basepoint: np.ndarray
    radius: float
    epsilon: float
    max_scale: float = 1.0
    max_dim: int = 1

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.basepoint, dtype=float))
        if x.ndim != 1 or not np.all(np.isfinite(x)):
            raise MalformedInput("basepoint must be a finite coordinate vector")
        object.__setattr__(self, "basepoint", x)
        # radius may be +inf: the sublevel pipeline never uses it
        for name in ("radius", "epsilon", "max_scale"):
            value = getattr(self, name)
            if not value > 0 or (name != "radius" and not np.isfinite(value)):
                raise ValueError(f"{name} must be positive, got {value}")
        if self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")

    def check_cloud(self, cloud: PointCloud) -> None:
        if len(self.basepoint) != cloud.dim:
            raise MalformedInput(
                f"basepoint has dimension {len(self.basepoint)}, cloud has {cloud.dim}"
            )


def _norms(diff: np.ndarray) -> np.ndarray:
    """Euclidean norms along the last axis.

    Plain sqrt of the sum of squares, except where that under- or overflows;
    those entries are rescaled by their largest coordinate first.
    """
    sq = np.einsum("...k,...k->...", diff, diff)
    out = np.sqrt(sq)
    bad = (sq < np.finfo(float).tiny) | ~np.isfinite(sq)
    if bad.any():
        d = diff[bad]
        scale = np.abs(d).max(axis=-1)
        nz = scale > 0
        fixed = np.zeros(len(d))
        u = d[nz] / scale[nz, None]
        fixed[nz] = scale[nz] * np.sqrt(np.einsum("ik,ik->i", u, u))
        out[bad] = fixed
    return out


def pairwise_distances(cloud: PointCloud) -> np.ndarray:
    """Full Euclidean distance matrix of the cloud."""
    if len(cloud) == 0:
        raise ValueError("cloud is empty")
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    dist = _norms(diff)
    # einsum sums in the same order for (i, j) and (j, i); enforce exact symmetry anyway
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)
    return dist


def _nearest_distances(sample: np.ndarray, reference: np.ndarray) -> np.ndarray:
    # chunked so desk-scale references do not blow up memory
    out = np.empty(len(reference))
    step = max(1, 2_000_000 // max(1, len(sample)))
    for start in range(0, len(reference), step):
        block = reference[start:start + step]
        diff = block[:, None, :] - sample[None, :, :]
        out[start:start + step] = _norms(diff).min(axis=1)
    return out


def coverage_radius(subset, cloud: PointCloud) -> float:
    """Smallest eps for which the points ``subset`` form an eps-sample of ``cloud``."""
    idx = sorted(set(int(i) for i in subset))
    if not idx:
        raise ValueError("subset must be nonempty")
    if idx[0] < 0 or idx[-1] >= len(cloud):
        raise IndexError("subset index out of range")
    return float(_nearest_distances(cloud.points[idx], cloud.points).max())


def sample_density(sample: PointCloud, reference: PointCloud) -> float:
    """Max over ``reference`` of the distance to the nearest ``sample`` point."""
    if len(sample) == 0:
        raise ValueError("sample must be nonempty")
    if len(reference) == 0:
        return 0.0
    if sample.dim != reference.dim:
        raise MalformedInput("sample and reference dimensions differ")
    return float(_nearest_distances(sample.points, reference.points).max())


def distance_to_basepoint(cloud: PointCloud, query: LocalQuery) -> np.ndarray:
    query.check_cloud(cloud)
    diff = cloud.points - query.basepoint
    return _norms(diff)


def split_by_ball(cloud: PointCloud, query: LocalQuery) -> tuple[list[int], list[int]]:
    """Partition point indices into the closed ball ``B_r(x)`` and its exterior.

    Points on the sphere count as inside.
    """
    d = distance_to_basepoint(cloud, query)
    inside = [i for i in range(len(cloud)) if d[i] <= query.radius]
    outside = [i for i in range(len(cloud)) if d[i] > query.radius]
    return inside, outside


def read_points(path) -> PointCloud:
    """Parse the whitespace-separated point file format."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise MalformedInput(f"{path}:{lineno}: {exc}") from None
        if len(rows[-1]) != len(rows[0]):
            raise MalformedInput(f"{path}:{lineno}: expected {len(rows[0])} coordinates")
    if not rows:
        raise MalformedInput(f"{path}: no points")
    return PointCloud.from_rows(rows)


def format_points(cloud: PointCloud) -> str:
    return "".join(" ".join(repr(float(c)) for c in p) + "\n" for p in cloud.points)


def write_points(cloud: PointCloud, path) -> None:
    Path(path).write_text(format_points(cloud))
