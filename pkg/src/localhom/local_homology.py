"""Multi-scale local homology at a basepoint: alpha- and r-filtration pipelines.

Both pipelines return a diagram together with a certified bound on its
bottleneck distance to the diagram of the underlying space's filtration,
valid when the cloud is an ``epsilon``-sample of that space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import build_rips, lower_star_filtration, restrict_to_vertices
from .diagrams import PersistenceDiagram
from .geometry import LocalQuery, PointCloud, distance_to_basepoint, split_by_ball
from .persistence import reduce, relative_reduce


class GuaranteeLapsed(ValueError):
    """The requested scale range lies outside where the bound holds."""


def certified_bound_alpha(epsilon: float, alpha: float, r: float) -> float:
    """Interleaving constant 2*eps + alpha + alpha**2 / r (needs alpha < r)."""
    if epsilon <= 0 or alpha < 0:
        raise ValueError("epsilon must be positive and alpha nonnegative")
    if alpha >= r:
        raise GuaranteeLapsed(f"alpha={alpha} >= r={r}: no approximation guarantee")
    return 2 * epsilon + alpha + alpha ** 2 / r


def certified_bound_r(epsilon: float) -> float:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return 4 * epsilon


_FORMULAS = {
    "alpha": ("2*epsilon + alpha + alpha**2/r", ("epsilon", "alpha", "r"), certified_bound_alpha),
    "r": ("4*epsilon", ("epsilon",), certified_bound_r),
}


@dataclass
class ApproxResult:
    """Diagram plus certified bottleneck radius around the ideal diagram."""

    diagram: PersistenceDiagram
    bound: float
    bound_formula: str
    pipeline: str
    params: dict = field(default_factory=dict)
    assumptions: tuple = ()

    def recompute_bound(self) -> float:
        expr, names, fn = _FORMULAS[self.pipeline]
        return fn(*(self.params[n] for n in names))

    def metadata(self) -> dict:
        meta = {"pipeline": self.pipeline}
        meta.update(self.params)
        if "alpha" in self.params:
            meta["max_scale"] = self.params["alpha"]
        meta["bound"] = self.bound
        meta["bound_formula"] = self.bound_formula
        for i, a in enumerate(self.assumptions):
            meta[f"assumes_{i}"] = a
        return meta


def _record(pipeline: str, params: dict) -> tuple[float, str]:
    expr, names, fn = _FORMULAS[pipeline]
    bound = fn(*(params[n] for n in names))
    return bound, expr + "; " + "; ".join(f"{n}={params[n]!r}" for n in names)


def alpha_pipeline(cloud: PointCloud, query: LocalQuery) -> ApproxResult:
    """Relative Rips persistence of (R_a(L), R_a(L~)) for a up to ``max_scale``.

    ``L~`` is the part of the cloud outside the closed ball. The bound is the
    worst case over the scale range, i.e. evaluated at ``max_scale``.
    """
    query.check_cloud(cloud)
    alpha = query.max_scale
    if alpha >= query.radius:
        raise GuaranteeLapsed(
            f"max_scale={alpha} >= r={query.radius}: the pair approximates nothing local"
        )
    params = {"epsilon": query.epsilon, "alpha": alpha, "r": query.radius,
              "max_dim": query.max_dim}
    bound, formula = _record("alpha", params)
    rips = build_rips(cloud, alpha, query.max_dim)
    _, outside = split_by_ball(cloud, query)
    pair = restrict_to_vertices(rips, outside)
    diagram = relative_reduce(pair, query.max_dim)
    return ApproxResult(diagram, bound, formula, "alpha", params)


def r_pipeline(cloud: PointCloud, query: LocalQuery) -> ApproxResult:
    """Sublevel persistence of f = -d_x on the Rips complex at scale 2*eps.

    The result describes the r-filtration through :func:`translate_diagram`.
    ``query.radius`` and ``query.max_scale`` are not used.
    """
    eps = query.epsilon
    f = -distance_to_basepoint(cloud, query)
    complex_ = build_rips(cloud, 2 * eps, query.max_dim)
    diagram = reduce(lower_star_filtration(complex_, f), query.max_dim)
    params = {"epsilon": eps, "scale": 2 * eps, "max_dim": query.max_dim}
    bound, formula = _record("r", params)
    assumptions = ("the 2*epsilon offset of the space retracts onto it by a 2*epsilon-homotopy",)
    formula += "; assumes " + assumptions[0]
    return ApproxResult(diagram, bound, formula, "r", params, assumptions)


def translate_diagram(ordinary: PersistenceDiagram, inverse: bool = False) -> PersistenceDiagram:
    """Reflect (b, d) -> (-d, -b) and shift dimension up by one.

    Maps the sublevel diagram of f = -d_x to the relative diagram of the
    r-filtration. Essential classes (infinite death) become points with birth
    ``-inf``; see :func:`split_essential`. ``inverse=True`` shifts the
    dimension down instead, undoing the forward map.
    """
    step = -1 if inverse else 1
    pts = []
    for k, b, d in ordinary:
        if k + step < 0:
            raise ValueError(f"cannot shift dimension {k} down")
        pts.append((k + step, -d, -b))
    return PersistenceDiagram(tuple(pts))


def ball_contact(center_a, center_b, basepoint, r: float) -> tuple[float, float]:
    """Where two equal balls around ``center_a``/``center_b`` first meet, relative to B_r(x).

    The balls touch at the midpoint of their centers. Returns the depth of
    that point below the sphere of radius ``r`` (0 when outside the open
    ball) and the scale at which both balls reach the sphere point radially
    above it.
    """
    a, b, x = (np.asarray(v, dtype=float) for v in (center_a, center_b, basepoint))
    mid = (a + b) / 2 - x
    norm = float(np.linalg.norm(mid))
    depth = max(0.0, r - norm)
    if depth == 0.0:
        return 0.0, float(np.linalg.norm(a - b)) / 2
    above = mid * (r / norm) if norm > 0 else np.eye(len(mid))[0] * r
    reach = max(float(np.linalg.norm(a - x - above)), float(np.linalg.norm(b - x - above)))
    return depth, reach


def split_essential(diagram: PersistenceDiagram):
    """Split into (finite points, points with an infinite coordinate)."""
    return diagram.finite(), diagram.essential()


def sweep(cloud: PointCloud, queries, pipeline=alpha_pipeline, jobs: int = 1) -> list:
    """Run one pipeline for many basepoints, optionally in worker processes."""
    if jobs <= 1:
        return [pipeline(cloud, q) for q in queries]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(pipeline, [cloud] * len(queries), queries))
