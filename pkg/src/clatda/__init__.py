"""Lattice reduction of point clouds and the Vietoris-Rips persistence
pipeline used to check that the reduction keeps barcodes close."""

__version__ = "0.1.0"

from .cla import Strategy, delta_for_rate, lemma_bound_holds, reduce
from .diagram_metrics import bottleneck_distance, interval_distance
from .errors import (
    ClatdaError,
    DomainError,
    MalformedInputError,
    NoSolutionError,
    ResourceLimitError,
)
from .geometry import as_cloud, hausdorff_distance, pairwise_distances
from .persistence import Bar, Barcode, betti_oracle, compute_persistence
from .rips import FilteredComplex, build_rips
from .synth import gen_random, gen_sphere, normalize_box
from .verify import verify_stability

__all__ = [
    "Bar",
    "Barcode",
    "ClatdaError",
    "DomainError",
    "FilteredComplex",
    "MalformedInputError",
    "NoSolutionError",
    "ResourceLimitError",
    "Strategy",
    "as_cloud",
    "betti_oracle",
    "bottleneck_distance",
    "build_rips",
    "compute_persistence",
    "delta_for_rate",
    "gen_random",
    "gen_sphere",
    "hausdorff_distance",
    "interval_distance",
    "lemma_bound_holds",
    "normalize_box",
    "pairwise_distances",
    "reduce",
    "verify_stability",
]
