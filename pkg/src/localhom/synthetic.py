"""Deterministic nets of small stratified test spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import PointCloud

KINDS = ("segment", "circle", "cross2d", "planes3d", "cone2d")


@dataclass(frozen=True)
class SpaceSpec:
    """A test space and the density of its net.

    ``size`` is the segment length, circle radius, full length of each
    crossing segment, side of each square, or arm length, depending on
    ``kind``. ``arms`` is used by ``cone2d`` only. Nets are jitter-free, so
    ``seed`` only labels a run.
    """

    kind: str
    density: float
    seed: int = 0
    size: float = 1.0
    arms: int = 3

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unsupported kind {self.kind!r}; expected one of {KINDS}")
        if not self.density > 0 or not self.size > 0:
            raise ValueError("density and size must be positive")
        if self.kind == "cone2d" and not 1 <= self.arms <= 64:
            raise ValueError("cone2d needs 1..64 arms")


def _steps(length: float, h: float, even: bool = False) -> int:
    n = max(1, math.ceil(length / h - 1e-9))
    if even and n % 2:
        n += 1
    return n


def _dedupe(points: np.ndarray) -> np.ndarray:
    seen, out = set(), []
    for p in points:
        key = tuple(np.round(p, 12) + 0.0)
        if key not in seen:
            seen.add(key)
            out.append(p)
    return np.array(out)


def generate(spec: SpaceSpec) -> PointCloud:
    """Net of the space with consecutive samples at most ``density`` apart."""
    h, L = spec.density, spec.size
    if spec.kind == "segment":
        n = _steps(L, h)
        pts = np.column_stack([np.linspace(0.0, L, n + 1), np.zeros(n + 1)])
    elif spec.kind == "circle":
        n = max(3, _steps(2 * math.pi * L, h))
        t = 2 * math.pi * np.arange(n) / n
        pts = np.column_stack([L * np.cos(t), L * np.sin(t)])
    elif spec.kind == "cross2d":
        n = _steps(L, h, even=True)
        s = np.linspace(-L / 2, L / 2, n + 1)
        s[n // 2] = 0.0
        z = np.zeros_like(s)
        pts = _dedupe(np.vstack([np.column_stack([s, z]), np.column_stack([z, s])]))
    elif spec.kind == "planes3d":
        n = _steps(L, h, even=True)
        s = np.linspace(-L / 2, L / 2, n + 1)
        s[n // 2] = 0.0
        u, v = (a.ravel() for a in np.meshgrid(s, s, indexing="ij"))
        z = np.zeros_like(u)
        pts = _dedupe(np.vstack([np.column_stack([u, v, z]), np.column_stack([u, z, v])]))
    else:  # cone2d
        n = _steps(L, h)
        s = np.linspace(0.0, L, n + 1)
        rays = []
        for j in range(spec.arms):
            t = 2 * math.pi * j / spec.arms
            rays.append(np.column_stack([s * math.cos(t), s * math.sin(t)]))
        pts = _dedupe(np.vstack(rays))
    return PointCloud(pts)


def dense_reference(spec: SpaceSpec, factor: int = 10) -> PointCloud:
    return generate(replace(spec, density=spec.density / factor))


def canonical_points(spec: SpaceSpec) -> dict:
    """Named basepoints -> (coordinates, expected ranks {dim: rank}, max radius).

    The ranks describe the local homology seen through balls of radius below
    the max radius, beyond which the ball meets another feature of the space.
    """
    L = spec.size
    if spec.kind == "segment":
        return {
            "interior": ((L / 2, 0.0), {1: 1}, L / 2),
            "endpoint": ((0.0, 0.0), {}, L),
        }
    if spec.kind == "circle":
        return {"on-circle": ((L, 0.0), {1: 1}, 2 * L)}
    if spec.kind == "cross2d":
        return {
            "crossing": ((0.0, 0.0), {1: 3}, L / 2),
            "arm-interior": ((3 * L / 8, 0.0), {1: 1}, L / 8),
            "arm-endpoint": ((L / 2, 0.0), {}, L / 2),
        }
    if spec.kind == "planes3d":
        return {
            "intersection-line": ((0.0, 0.0, 0.0), {2: 3}, L / 2),
            "sheet-interior": ((0.0, L / 4, 0.0), {2: 1}, L / 4),
            "sheet-corner": ((L / 2, L / 2, 0.0), {}, L / 2),
        }
    arms = spec.arms
    return {
        "apex": ((0.0, 0.0), {1: arms - 1} if arms > 1 else {}, L),
        "arm-interior": ((L / 2, 0.0), {1: 1}, L / 2),
        "arm-tip": ((L, 0.0), {}, L),
    }


def _lookup(spec: SpaceSpec, basepoint):
    x = np.asarray(basepoint, dtype=float)
    for name, (p, ranks, r_max) in canonical_points(spec).items():
        if len(p) == len(x) and np.allclose(p, x, atol=1e-9):
            return name, dict(ranks), r_max
    if spec.kind == "circle" and len(x) == 2 and abs(np.hypot(*x) - spec.size) < 1e-9:
        return "on-circle", {1: 1}, 2 * spec.size
    raise ValueError(f"{tuple(x)} is not a canonical basepoint of {spec.kind}")


def expected_ranks(spec: SpaceSpec, basepoint) -> dict:
    return _lookup(spec, basepoint)[1]


def ground_truth_note(spec: SpaceSpec, basepoint) -> str:
    """Human-readable expected local homology signature at a canonical point."""
    name, ranks, r_max = _lookup(spec, basepoint)
    sig = ", ".join(f"H{k}={v}" for k, v in sorted(ranks.items())) or "trivial"
    coords = ", ".join(f"{float(c):g}" for c in basepoint)
    return (f"{spec.kind} at ({coords}) [{name}]: expected local homology {sig}; "
            f"other ranks 0; valid for ball radius < {r_max:g}")
