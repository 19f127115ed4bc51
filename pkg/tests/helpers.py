"""Random generators shared by the test modules."""

import itertools
import math

import numpy as np

from localhom.complexes import Filtration, FilteredPair, facets
from localhom.diagrams import PersistenceDiagram
from localhom.local_homology import ball_contact


def _closure(simplices):
    out = set()
    for s in simplices:
        for k in range(1, len(s) + 1):
            out.update(itertools.combinations(s, k))
    return out


def monotone_values(simplices, raw: dict) -> dict:
    """Raise each raw value to the max over its faces."""
    vals = {}
    for s in sorted(simplices, key=len):
        v = raw[s]
        for f in facets(s):
            v = max(v, vals[f])
        vals[s] = v
    return vals


def random_filtration(rng, max_cells=200, n_vertices=(4, 9), max_size=4, ties=True):
    """Face-closed random complex with monotone values, at most ``max_cells`` cells."""
    n = int(rng.integers(*n_vertices))
    cells = {(v,) for v in range(n)}
    for _ in range(200):
        size = int(rng.integers(2, max_size + 1))
        s = tuple(sorted(rng.choice(n, size=min(size, n), replace=False).tolist()))
        grown = cells | _closure([s])
        if len(grown) > max_cells:
            break
        cells = grown
    if ties:
        raw = {s: float(rng.integers(0, 6)) for s in cells}
    else:
        raw = {s: float(rng.uniform(0, 5)) for s in cells}
    vals = monotone_values(cells, raw)
    return Filtration.from_cells(vals.items())


def random_pair(rng, max_cells=120):
    """Random filtration with a random face-closed flagged subcomplex."""
    filt = random_filtration(rng, max_cells=max_cells)
    seeds = [s for s in filt.simplices if rng.random() < 0.3]
    sub = _closure(seeds)
    return FilteredPair(filt, tuple(s in sub for s in filt.simplices))


def perturb(filtration: Filtration, rng, delta: float) -> Filtration:
    """Move every value by at most ``delta`` while keeping it monotone."""
    raw = {s: v + rng.uniform(-delta, delta) for s, v in filtration}
    # raising to the face maximum cannot move a value past +delta of its original
    vals = monotone_values(filtration.simplices, raw)
    return Filtration.from_cells(vals.items())


def reflag(pair: FilteredPair, filtration: Filtration) -> FilteredPair:
    flagged = {s for s, f in zip(pair.ambient.simplices, pair.in_subcomplex) if f}
    return FilteredPair(filtration, tuple(s in flagged for s in filtration.simplices))


def random_diagram(rng, n_max=6, dims=(0, 1), with_inf=False):
    pts = []
    for _ in range(int(rng.integers(0, n_max + 1))):
        b = float(rng.uniform(0, 4))
        d = b + float(rng.uniform(0.01, 3))
        if with_inf and rng.random() < 0.2:
            d = np.inf
        pts.append((int(rng.choice(dims)), b, d))
    return PersistenceDiagram(tuple(pts))


def random_contact(rng, dim, r, alpha):
    """Two centres on or outside the sphere whose alpha-balls meet inside it."""
    while True:
        u = rng.normal(size=dim)
        u /= np.linalg.norm(u)
        w = rng.normal(size=dim)
        w -= (w @ u) * u
        w /= np.linalg.norm(w)
        angle = rng.uniform(0, 2 * math.asin(min(1.0, alpha / r)))
        v = math.cos(angle) * u + math.sin(angle) * w
        a = u * r * (1 + rng.uniform(0, 0.05) * alpha / r)
        b = v * r * (1 + rng.uniform(0, 0.05) * alpha / r)
        if np.linalg.norm(a - b) <= 2 * alpha:
            depth, reach = ball_contact(a, b, np.zeros(dim), r)
            if depth > 0:
                return depth, reach
