"""
Type definitions for qhpolytope JSON artifacts.

This module provides TypedDict definitions for every serialized output,
plus enums for type-safe parameter validation.
"""

from enum import Enum
from typing import Any, TypedDict

# Enums for type-safe API parameters


class SolveStatus(Enum):
    """Outcome of a fiber solve."""

    CONVERGED = "Converged"
    NON_CONVERGENT = "NonConvergent"


class CloudKind(Enum):
    """Which momentum image a cloud samples."""

    FULL = "Full"
    REAL = "Real"


class TransferDirection(Enum):
    """Direction of the symmetric/unitary transfer."""

    TO_UNITARY = "to-unitary"
    TO_SYMMETRIC = "to-symmetric"


SolveStatusType = SolveStatus | str
CloudKindType = CloudKind | str
TransferDirectionType = TransferDirection | str

# A complex matrix on the wire: rows of [re, im] pairs.
MatrixJSON = list[list[list[float]]]


class CellSignatureJSON(TypedDict):
    """JSON schema for CellSignature objects.

    Example:
        {"Z0": [], "Z1": [[1, 3]]}
    """

    Z0: list[list[int]]
    Z1: list[list[int]]


class ConfigurationJSON(TypedDict):
    """JSON schema for Configuration objects.

    Example:
        {
            "n": 2,
            "genus": 0,
            "classes": [[0.2, -0.2], [0.15, -0.15]],
            "handles": [],
            "punctures": [[[[0.81, 0.59], [0.0, 0.0]], [[0.0, 0.0], [0.81, -0.59]]], ...]
        }
    """

    n: int
    genus: int
    classes: list[list[float]]
    handles: list[MatrixJSON]
    punctures: list[MatrixJSON]


class FeasibilityReportJSON(TypedDict, total=False):
    """JSON schema for FeasibilityReport objects.

    Example:
        {
            "status": "Converged",
            "residual": 3.1e-10,
            "beta_residual": null,
            "iterations": 57,
            "restarts_used": 1,
            "target": [0.2, -0.2],
            "residual_tol": 1e-08,
            "certificate": "witness",
            "witness": {...}
        }
    """

    status: str
    residual: float
    beta_residual: float | None
    iterations: int
    restarts_used: int
    target: list[float]
    residual_tol: float
    certificate: str
    witness: ConfigurationJSON


class ProblemSpecJSON(TypedDict, total=False):
    """JSON schema for problem spec files consumed by the CLI.

    Example:
        {
            "n": 2,
            "genus": 0,
            "classes": [[0.2, -0.2], [0.15, -0.15]],
            "seed": 7,
            "samples": 100000,
            "tolerances": {"classify": 1e-8}
        }
    """

    n: int
    genus: int
    classes: list[list[float]]
    seed: int
    samples: int
    tolerances: dict[str, float]


class IntervalResultJSON(TypedDict):
    """JSON schema for SU(2) interval results."""

    lo: float
    hi: float
    samples: int


class ConvexityReportJSON(TypedDict):
    """JSON schema for convexity verification reports."""

    pairs: int
    feasible: int
    fraction: float
    residual_tol: float
    note: str
    midpoints: list[dict[str, Any]]


class RealEqualityReportJSON(TypedDict):
    """JSON schema for real-versus-full comparison reports."""

    hausdorff_real_to_full: float
    hausdorff_full_to_real: float
    hausdorff: float
    grid_targets: int
    grid_converged: int
    grid_fraction: float
    real_in_full_fraction: float
    residual_tol: float
    note: str


class DominantCellJSON(TypedDict):
    """JSON schema for dominant-cell results."""

    signature: CellSignatureJSON
    orbit_dim: int
    fraction: float
    tol: float


__all__ = [
    # Enums
    "SolveStatus",
    "CloudKind",
    "TransferDirection",
    # Union types
    "SolveStatusType",
    "CloudKindType",
    "TransferDirectionType",
    # JSON schemas
    "MatrixJSON",
    "CellSignatureJSON",
    "ConfigurationJSON",
    "FeasibilityReportJSON",
    "ProblemSpecJSON",
    "IntervalResultJSON",
    "ConvexityReportJSON",
    "RealEqualityReportJSON",
    "DominantCellJSON",
]
