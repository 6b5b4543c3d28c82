"""Type-A root system, the closed Weyl alcove of SU(n) and its cells."""

from .cells import (
    classify,
    highest_root,
    orbit_dim,
    positive_roots,
    simple_roots,
    stabilizer_dim,
    stabilizer_dim_from_blocks,
)
from .projection import alcove_project, alcove_project_many, canonical_phases
from .types import AlcovePoint, CellSignature, RootIndex

__all__ = [
    "AlcovePoint",
    "CellSignature",
    "RootIndex",
    "classify",
    "stabilizer_dim",
    "stabilizer_dim_from_blocks",
    "orbit_dim",
    "positive_roots",
    "simple_roots",
    "highest_root",
    "alcove_project",
    "alcove_project_many",
    "canonical_phases",
]
