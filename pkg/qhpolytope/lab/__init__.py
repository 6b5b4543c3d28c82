"""Sampling and verification of momentum polytopes."""

from .sampling import sample_polytope, sample_real_polytope, su2_interval, su2_interval_bounds
from .types import AlcoveCloud, ConvexityReport, DominantCellResult, IntervalResult, RealEqualityReport
from .verify import (
    dominant_cell,
    grid_targets,
    hausdorff_distance,
    hull_contains,
    verify_convexity,
    verify_real_equality,
)

__all__ = [
    "AlcoveCloud",
    "IntervalResult",
    "ConvexityReport",
    "RealEqualityReport",
    "DominantCellResult",
    "sample_polytope",
    "sample_real_polytope",
    "su2_interval",
    "su2_interval_bounds",
    "verify_convexity",
    "verify_real_equality",
    "dominant_cell",
    "grid_targets",
    "hausdorff_distance",
    "hull_contains",
]
