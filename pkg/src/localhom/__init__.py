"""Approximate multi-scale local homology of point samples with certified bounds."""

from .complexes import (
    Filtration,
    FilteredPair,
    StructuralError,
    build_cech,
    build_rips,
    lower_star_filtration,
    restrict_to_vertices,
    verify_interleaving_chain,
)
from .diagram_metric import bottleneck_distance, interleaving_certificate
from .diagrams import PersistenceDiagram
from .geometry import (
    LocalQuery,
    MalformedInput,
    PointCloud,
    coverage_radius,
    distance_to_basepoint,
    pairwise_distances,
    split_by_ball,
)
from .local_homology import (
    ApproxResult,
    GuaranteeLapsed,
    alpha_pipeline,
    certified_bound_alpha,
    r_pipeline,
    translate_diagram,
)
from .persistence import betti_oracle, reduce, relative_reduce
from .synthetic import SpaceSpec, generate, ground_truth_note

__version__ = "0.1.0"

__all__ = [
    "Filtration",
    "FilteredPair",
    "StructuralError",
    "build_cech",
    "build_rips",
    "lower_star_filtration",
    "restrict_to_vertices",
    "verify_interleaving_chain",
    "bottleneck_distance",
    "interleaving_certificate",
    "PersistenceDiagram",
    "LocalQuery",
    "MalformedInput",
    "PointCloud",
    "coverage_radius",
    "distance_to_basepoint",
    "pairwise_distances",
    "split_by_ball",
    "ApproxResult",
    "GuaranteeLapsed",
    "alpha_pipeline",
    "certified_bound_alpha",
    "r_pipeline",
    "translate_diagram",
    "betti_oracle",
    "reduce",
    "relative_reduce",
    "SpaceSpec",
    "generate",
    "ground_truth_note",
]
