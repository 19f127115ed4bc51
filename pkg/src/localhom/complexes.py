"""Filtered simplicial complexes: Vietoris-Rips, Cech, lower-star, and pairs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .geometry import PointCloud, pairwise_distances

Simplex = tuple  # strictly increasing vertex indices


class StructuralError(ValueError):
    """A filtration or pair violates face-closure, monotonicity or ordering."""


def sort_key(simplex: Simplex, value: float):
    return (value, len(simplex), simplex)


def facets(simplex: Simplex):
    if len(simplex) == 1:
        return ()
    return tuple(simplex[:i] + simplex[i + 1:] for i in range(len(simplex)))


@dataclass(frozen=True)
class Filtration:
    """Simplices in filtration order together with their entry values.

    Use :meth:`from_cells` to build one from unordered cells; the direct
    constructor trusts that the order is already (value, dim, lex).
    """

    simplices: tuple
    values: tuple

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[Sequence[int], float]]) -> "Filtration":
        normed = [(tuple(sorted(s)), float(v)) for s, v in cells]
        normed.sort(key=lambda c: sort_key(*c))
        return cls(tuple(s for s, _ in normed), tuple(v for _, v in normed))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return zip(self.simplices, self.values)

    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.simplices)}

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices if len(s) == 1]

    @property
    def top_dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def validate(self) -> None:
        """Raise :class:`StructuralError` unless every invariant holds."""
        pos = {}
        for i, (s, v) in enumerate(self):
            if not s or any(a >= b for a, b in zip(s, s[1:])):
                raise StructuralError(f"simplex {s} is not strictly increasing")
            if s in pos:
                raise StructuralError(f"duplicate simplex {s}")
            if not np.isfinite(v):
                raise StructuralError(f"simplex {s} has non-finite value {v}")
            if i and sort_key(s, v) < sort_key(self.simplices[i - 1], self.values[i - 1]):
                raise StructuralError(f"simplex {s} out of (value, dim, lex) order")
            for f in facets(s):
                j = pos.get(f)
                if j is None:
                    raise StructuralError(f"facet {f} of {s} missing or out of order")
                if self.values[j] > v:
                    raise StructuralError(f"facet {f} enters after its coface {s}")
            pos[s] = i

    def sublevel(self, value: float, strict: bool = False) -> set:
        if strict:
            return {s for s, v in self if v < value}
        return {s for s, v in self if v <= value}

    def dump(self) -> str:
        """Debug text: one ``value v0 v1 ...`` line per cell, in order."""
        return "".join(
            f"{v!r} " + " ".join(map(str, s)) + "\n" for s, v in self
        )


@dataclass(frozen=True)
class FilteredPair:
    """A filtration with a flagged subfiltration ``A`` inside ``K``."""

    ambient: Filtration
    in_subcomplex: tuple

    def __post_init__(self):
        if len(self.in_subcomplex) != len(self.ambient):
            raise StructuralError("one flag per cell required")

    def validate(self) -> None:
        self.ambient.validate()
        flagged = {s for s, f in zip(self.ambient.simplices, self.in_subcomplex) if f}
        for s in flagged:
            for t in facets(s):
                if t not in flagged:
                    raise StructuralError(f"flagged {s} has unflagged facet {t}")

    def subfiltration(self) -> Filtration:
        cells = [(s, v) for (s, v), f in zip(self.ambient, self.in_subcomplex) if f]
        return Filtration(tuple(s for s, _ in cells), tuple(v for _, v in cells))


def _expand(neighbors: list[set], weight, n: int, max_size: int, max_scale: float):
    """Clique expansion: yields (simplex, value) up to ``max_size`` vertices.

    ``weight(simplex, value, new_vertex)`` returns the value of the extended
    simplex or None when it exceeds ``max_scale``.
    """
    out = []
    stack = [((v,), 0.0, neighbors[v]) for v in range(n)]
    while stack:
        simplex, value, cands = stack.pop()
        out.append((simplex, value))
        if len(simplex) == max_size:
            continue
        for u in cands:
            w = weight(simplex, value, u)
            if w is not None and w <= max_scale:
                stack.append((simplex + (u,), w, cands & neighbors[u]))
    return out


def build_rips(cloud: PointCloud, max_scale: float, max_dim: int) -> Filtration:
    """Vietoris-Rips filtration valued by simplex diameter.

    Simplices up to dimension ``max_dim + 1`` with diameter at most
    ``max_scale`` are included so that the top reported dimension gets its
    deaths.
    """
    if max_scale <= 0 or max_dim < 0:
        raise ValueError("max_scale must be positive and max_dim nonnegative")
    n = len(cloud)
    if n == 0:
        return Filtration((), ())
    dist = pairwise_distances(cloud)
    upper = np.triu(dist <= max_scale, k=1)
    neighbors = [set(np.flatnonzero(upper[i]).tolist()) for i in range(n)]

    def weight(simplex, value, u):
        return max(value, max(dist[v, u] for v in simplex))

    return Filtration.from_cells(_expand(neighbors, weight, n, max_dim + 2, max_scale))


def _circumball(pts: np.ndarray):
    """Smallest ball with every row of ``pts`` on its boundary (center in their affine hull)."""
    p0 = pts[0]
    if len(pts) == 1:
        return p0.copy(), 0.0
    A = pts[1:] - p0
    G = A @ A.T
    rhs = 0.5 * np.einsum("ij,ij->i", A, A)
    lam = np.linalg.lstsq(G, rhs, rcond=None)[0]
    center = p0 + lam @ A
    return center, float(np.max(np.linalg.norm(pts - center, axis=1)))


def _contains(center, radius, p) -> bool:
    return float(np.linalg.norm(p - center)) <= radius * (1 + 1e-12) + 1e-15


def _welzl(pts: np.ndarray, idx: list[int], support: list[int], dim: int):
    if not idx or len(support) == dim + 1:
        if not support:
            return None, -np.inf, support
        c, r = _circumball(pts[support])
        return c, r, support
    p = idx[-1]
    c, r, sup = _welzl(pts, idx[:-1], support, dim)
    if c is not None and _contains(c, r, pts[p]):
        return c, r, sup
    return _welzl(pts, idx[:-1], support + [p], dim)


def meb_exhaustive(pts: np.ndarray):
    """Minimum enclosing ball by trying every candidate support set."""
    pts = np.asarray(pts, dtype=float)
    n, d = pts.shape
    best = (None, np.inf, [])
    for k in range(1, min(n, d + 1) + 1):
        for sup in itertools.combinations(range(n), k):
            # degenerate supports still yield enclosing balls, never a smaller one
            c, r = _circumball(pts[list(sup)])
            if r < best[1] and all(_contains(c, r, p) for p in pts):
                best = (c, r, list(sup))
    return best


def minimum_enclosing_ball(pts) -> tuple[np.ndarray, float, list[int]]:
    """Center, radius and support indices of the smallest enclosing ball.

    Welzl's recursion on the given order; if rounding leaves a point outside,
    the exhaustive support search (fine for a dozen points) takes over.
    """
    pts = np.asarray(pts, dtype=float)
    if len(pts) == 0:
        raise ValueError("no points")
    c, r, sup = _welzl(pts, list(range(len(pts))), [], pts.shape[1])
    if not all(_contains(c, r, p) for p in pts):
        c, r, sup = meb_exhaustive(pts)
    return c, r, sorted(sup)


def _meb_value(points: np.ndarray, dist: np.ndarray, simplex: Simplex) -> float:
    if len(simplex) == 1:
        return 0.0
    if len(simplex) == 2:
        return dist[simplex[0], simplex[1]] / 2
    _, r, sup = minimum_enclosing_ball(points[list(simplex)])
    if len(sup) == 2:
        # same arithmetic as the edge values, so ties stay ties
        return dist[simplex[sup[0]], simplex[sup[1]]] / 2
    return r


def build_cech(cloud: PointCloud, max_scale: float, max_dim: int) -> Filtration:
    """Cech filtration valued by minimum-enclosing-ball radius (small inputs)."""
    if max_scale <= 0 or max_dim < 0:
        raise ValueError("max_scale must be positive and max_dim nonnegative")
    n = len(cloud)
    if n == 0:
        return Filtration((), ())
    dist = pairwise_distances(cloud)
    pts = cloud.points
    # an edge of a Cech simplex is itself a Cech simplex
    upper = np.triu(dist / 2 <= max_scale, k=1)
    neighbors = [set(np.flatnonzero(upper[i]).tolist()) for i in range(n)]
    values = {}

    def weight(simplex, value, u):
        s = simplex + (u,)
        r = _meb_value(pts, dist, s)
        # radius is monotone in exact arithmetic; clamp rounding noise
        for f in facets(s):
            fv = values.get(f)
            if fv is None and len(f) > 1:
                fv = _meb_value(pts, dist, f)
                values[f] = fv
            if fv is not None:
                r = max(r, fv)
        values[s] = r
        return r

    return Filtration.from_cells(_expand(neighbors, weight, n, max_dim + 2, max_scale))


def restrict_to_vertices(filtration: Filtration, keep: Iterable[int]) -> FilteredPair:
    """Flag the cells spanned by ``keep``: the full subcomplex on those vertices."""
    keep = set(keep)
    missing = keep - set(filtration.vertices)
    if missing:
        raise ValueError(f"vertices {sorted(missing)} are not in the filtration")
    flags = tuple(all(v in keep for v in s) for s in filtration.simplices)
    return FilteredPair(filtration, flags)


def lower_star_filtration(complex_: Filtration, vertex_values) -> Filtration:
    """Refilter a fixed complex by the max of its vertex values.

    ``vertex_values`` is a sequence indexed by vertex or a mapping.
    """
    if not isinstance(vertex_values, Mapping):
        vertex_values = dict(enumerate(vertex_values))
    cells = []
    for s in complex_.simplices:
        try:
            cells.append((s, max(float(vertex_values[v]) for v in s)))
        except KeyError as exc:
            raise ValueError(f"no value for vertex {exc.args[0]}") from None
    return Filtration.from_cells(cells)


def interleaving_chain_report(cloud: PointCloud, alpha: float, max_dim: int) -> dict:
    """Check C_{a/2} <= R_a <= C_a <= R_{2a} cell by cell; returns violations per link."""
    cech = build_cech(cloud, alpha, max_dim)
    rips = build_rips(cloud, 2 * alpha, max_dim)
    c_half, c_full = cech.sublevel(alpha / 2), cech.sublevel(alpha)
    r_full, r_double = rips.sublevel(alpha), rips.sublevel(2 * alpha)
    return {
        "C(a/2) in R(a)": sorted(c_half - r_full),
        "R(a) in C(a)": sorted(r_full - c_full),
        "C(a) in R(2a)": sorted(c_full - r_double),
    }


def verify_interleaving_chain(cloud: PointCloud, alpha: float, max_dim: int) -> bool:
    return not any(interleaving_chain_report(cloud, alpha, max_dim).values())
