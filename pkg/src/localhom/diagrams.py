"""Persistence diagrams and their text format."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of ``(dim, birth, death)`` points, stored sorted.

    Diagonal points (birth == death) are dropped on construction. Infinite
    death marks an essential class; a birth of ``-inf`` appears only in
    reflected diagrams.
    """

    points: tuple = ()

    def __post_init__(self):
        pts = []
        for dim, birth, death in self.points:
            dim, birth, death = int(dim), float(birth), float(death)
            if dim < 0:
                raise ValueError(f"negative dimension {dim}")
            if math.isnan(birth) or math.isnan(death) or death < birth:
                raise ValueError(f"invalid point ({dim}, {birth}, {death})")
            if birth != death:
                pts.append((dim, birth, death))
        pts.sort()
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def dims(self) -> list[int]:
        return sorted({p[0] for p in self.points})

    def in_dim(self, dim: int) -> np.ndarray:
        """``(k, 2)`` array of (birth, death) for one dimension."""
        arr = np.array([(b, d) for k, b, d in self.points if k == dim], dtype=float)
        return arr.reshape(-1, 2)

    def finite(self) -> "PersistenceDiagram":
        return PersistenceDiagram(tuple(p for p in self.points if np.isfinite(p[1:]).all()))

    def essential(self) -> "PersistenceDiagram":
        return PersistenceDiagram(tuple(p for p in self.points if not np.isfinite(p[1:]).all()))

    def restrict(self, max_dim: int) -> "PersistenceDiagram":
        return PersistenceDiagram(tuple(p for p in self.points if p[0] <= max_dim))

    def persistent_betti(self, dim: int, i: float, j: float) -> int:
        """Number of classes alive over the whole interval [i, j]."""
        return sum(1 for k, b, d in self.points if k == dim and b <= i and d > j)

    def to_text(self) -> str:
        return "".join(f"{k} {_fmt(b)} {_fmt(d)}\n" for k, b, d in self.points)

    @classmethod
    def from_text(cls, text: str) -> "PersistenceDiagram":
        pts = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != 3:
                raise ValueError(f"line {lineno}: expected 'dim birth death'")
            pts.append((int(toks[0]), float(toks[1]), float(toks[2])))
        return cls(tuple(pts))


def read_diagram(path) -> PersistenceDiagram:
    return PersistenceDiagram.from_text(Path(path).read_text())


def write_diagram(diagram: PersistenceDiagram, path, header: Iterable[str] = ()) -> None:
    lines = "".join(f"# {h}\n" for h in header)
    Path(path).write_text(lines + diagram.to_text())
