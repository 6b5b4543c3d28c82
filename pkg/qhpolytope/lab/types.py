"""Point clouds and verification reports for momentum polytopes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..alcove.cells import classify
from ..alcove.types import AlcovePoint, CellSignature
from ..exceptions import ValidationError
from ..io import encode_roots, read_cloud_csv, write_cloud_csv
from ..qham.types import SurfaceGroupData
from ..types import (
    CloudKind,
    ConvexityReportJSON,
    DominantCellJSON,
    IntervalResultJSON,
    RealEqualityReportJSON,
)

NOT_A_CERTIFICATE = (
    "Sampled and solved approximations: a NonConvergent solve is not evidence that a target is infeasible"
)


@dataclass
class AlcoveCloud:
    """Alcove projections of momentum values.

    Attributes
    ----------
    data : SurfaceGroupData
        Classes the configurations were drawn from
    kind : CloudKind
        ``FULL`` for the whole product of classes, ``REAL`` for fixed points
        of the involution
    points : ndarray, shape (N, n)
        Alcove coordinates, one row per accepted sample
    seed : int
        Root seed of the sampling streams
    requested : int
        Number of samples asked for; ``requested - rejected`` rows are kept
    rejected : int
        Samples dropped (non-integral phase sums or failed solves)
    """

    data: SurfaceGroupData
    kind: CloudKind
    points: np.ndarray
    seed: int
    requested: int
    rejected: int = 0

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, self.data.n)
        if self.requested - self.rejected != len(self.points):
            raise ValidationError(
                "Cloud size must equal requested minus rejected samples",
                field="points",
                value={"requested": self.requested, "rejected": self.rejected, "size": len(self.points)},
                invariant="cloud.size",
            )

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.data.n

    def alcove_points(self, tol: float = 1e-8) -> list[AlcovePoint]:
        return [AlcovePoint(tuple(row), tol=tol) for row in self.points]

    def signatures(self, tol: float = 1e-8) -> list[CellSignature]:
        return [classify(p, tol=tol) for p in self.alcove_points(tol)]

    def bounds(self) -> tuple[list[float], list[float]]:
        """Coordinate-wise minimum and maximum."""
        if self.size == 0:
            return [], []
        return self.points.min(axis=0).tolist(), self.points.max(axis=0).tolist()

    def to_csv(self, path: str | Path, tol: float = 1e-8) -> None:
        labels = []
        for sig in self.signatures(tol):
            payload = sig.to_json()
            labels.append((encode_roots(payload["Z0"]), encode_roots(payload["Z1"])))
        write_cloud_csv(path, self.points, labels)

    @classmethod
    def from_csv(cls, path: str | Path, data: SurfaceGroupData, kind: CloudKind, seed: int = 0) -> AlcoveCloud:
        points = read_cloud_csv(path)
        if points.size and points.shape[1] != data.n:
            raise ValidationError(
                f"CSV has {points.shape[1]} coordinates, data has n={data.n}", field="path", value=str(path)
            )
        return cls(data, kind, points, seed=seed, requested=len(points))

    def to_dict(self) -> dict[str, Any]:
        lo, hi = self.bounds()
        return {
            "kind": self.kind.value,
            "data": self.data.to_json(),
            "seed": self.seed,
            "requested": self.requested,
            "rejected": self.rejected,
            "size": self.size,
            "min": lo,
            "max": hi,
        }


@dataclass(frozen=True)
class IntervalResult:
    """Observed range of the SU(2) alcove coordinate of a product."""

    lo: float
    hi: float
    samples: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= 0.5:
            raise ValidationError(
                "Interval must satisfy 0 <= lo <= hi <= 1/2",
                field="interval",
                value=[self.lo, self.hi],
                invariant="interval.order",
            )

    def to_dict(self) -> IntervalResultJSON:
        return {"lo": self.lo, "hi": self.hi, "samples": self.samples}


@dataclass
class ConvexityReport:
    pairs: int
    feasible: int
    residual_tol: float
    midpoints: list[dict[str, Any]] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.feasible / self.pairs if self.pairs else 1.0

    def to_dict(self) -> ConvexityReportJSON:
        return {
            "pairs": self.pairs,
            "feasible": self.feasible,
            "fraction": self.fraction,
            "residual_tol": self.residual_tol,
            "note": NOT_A_CERTIFICATE,
            "midpoints": self.midpoints,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class RealEqualityReport:
    hausdorff_real_to_full: float
    hausdorff_full_to_real: float
    grid_targets: int
    grid_converged: int
    real_in_full_fraction: float
    residual_tol: float
    targets: list[dict[str, Any]] = field(default_factory=list)

    @property
    def hausdorff(self) -> float:
        return max(self.hausdorff_real_to_full, self.hausdorff_full_to_real)

    @property
    def grid_fraction(self) -> float:
        return self.grid_converged / self.grid_targets if self.grid_targets else 1.0

    def to_dict(self) -> RealEqualityReportJSON:
        return {
            "hausdorff_real_to_full": self.hausdorff_real_to_full,
            "hausdorff_full_to_real": self.hausdorff_full_to_real,
            "hausdorff": self.hausdorff,
            "grid_targets": self.grid_targets,
            "grid_converged": self.grid_converged,
            "grid_fraction": self.grid_fraction,
            "real_in_full_fraction": self.real_in_full_fraction,
            "residual_tol": self.residual_tol,
            "note": NOT_A_CERTIFICATE,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class DominantCellResult:
    signature: CellSignature
    orbit_dim: int
    fraction: float
    tol: float

    def to_dict(self) -> DominantCellJSON:
        return {
            "signature": self.signature.to_json(),
            "orbit_dim": self.orbit_dim,
            "fraction": self.fraction,
            "tol": self.tol,
        }
