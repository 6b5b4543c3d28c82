"""Value types for the type-A root system and the closed Weyl alcove."""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..exceptions import ValidationError
from ..types import CellSignatureJSON


@dataclass(frozen=True, order=True, slots=True)
class RootIndex:
    """Positive root alpha_ij(x) = x_i - x_j, with 1-based indices i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValidationError(
                f"Positive root needs 1 <= i < j, got ({self.i}, {self.j})",
                field="root",
                value=(self.i, self.j),
                invariant="root.order",
            )

    def value(self, x: Sequence[float] | np.ndarray) -> float:
        """Evaluate the root on an eigenphase vector."""
        return float(x[self.i - 1] - x[self.j - 1])

    def is_simple(self) -> bool:
        return self.j == self.i + 1

    def to_json(self) -> list[int]:
        return [self.i, self.j]


@dataclass(frozen=True)
class AlcovePoint:
    """A point of the closed Weyl alcove of SU(n).

    Coordinates are eigenphases: ``exp`` has eigenvalues ``e^{2 pi i x_k}``.
    Construction checks trace zero, descending order and the highest-root
    wall ``x_1 - x_n <= 1``, each within ``tol``.

    Attributes
    ----------
    x : tuple[float, ...]
        Eigenphase coordinates, descending
    tol : float
        Tolerance used for the invariant checks
    """

    x: tuple[float, ...]
    tol: float = 1e-8

    def __post_init__(self):
        coords = tuple(float(v) for v in np.asarray(self.x, dtype=float).ravel())
        object.__setattr__(self, "x", coords)

        if self.tol < 0:
            raise ValidationError("Tolerance must be nonnegative", field="tol", value=self.tol)
        if len(coords) < 2:
            raise ValidationError(
                "An alcove point needs n >= 2 coordinates", field="x", value=coords, invariant="alcove.rank"
            )
        if not all(np.isfinite(coords)):
            raise ValidationError("Coordinates must be finite", field="x", value=coords, invariant="alcove.finite")

        total = sum(coords)
        if abs(total) > self.tol:
            raise ValidationError(
                f"Coordinates must sum to 0 within {self.tol}, got {total}",
                field="x",
                value=coords,
                invariant="alcove.sum_zero",
            )
        for k in range(len(coords) - 1):
            if coords[k] - coords[k + 1] < -self.tol:
                raise ValidationError(
                    f"Coordinates must be descending, x{k + 1} < x{k + 2}",
                    field="x",
                    value=coords,
                    invariant="alcove.descending",
                )
        if coords[0] - coords[-1] > 1 + self.tol:
            raise ValidationError(
                f"Highest root value {coords[0] - coords[-1]} exceeds 1",
                field="x",
                value=coords,
                invariant="alcove.highest_root",
            )

    @property
    def n(self) -> int:
        return len(self.x)

    @cached_property
    def array(self) -> np.ndarray:
        values = np.array(self.x, dtype=float)
        values.setflags(write=False)
        return values

    def exp(self) -> np.ndarray:
        """Diagonal SU(n) representative ``diag(e^{2 pi i x})``."""
        return np.diag(np.exp(2j * np.pi * self.array))

    def fractional_phases(self) -> np.ndarray:
        """Phases of ``exp`` reduced to [0, 1)."""
        return np.mod(self.array, 1.0)

    def distance(self, other: AlcovePoint) -> float:
        """Euclidean distance in alcove coordinates."""
        return float(np.linalg.norm(self.array - other.array))

    def to_json(self) -> list[float]:
        return list(self.x)

    @classmethod
    def from_json(cls, data: Sequence[float] | str, tol: float = 1e-8) -> AlcovePoint:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data), tol=tol)

    @classmethod
    def identity(cls, n: int) -> AlcovePoint:
        return cls((0.0,) * n)


@dataclass(frozen=True)
class CellSignature:
    """Roots vanishing (Z0) or equal to one (Z1) at an alcove point.

    The signature labels the alcove cell and determines the stabilizer of
    the corresponding conjugacy class.
    """

    Z0: frozenset[RootIndex] = field(default_factory=frozenset)
    Z1: frozenset[RootIndex] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "Z0", frozenset(self.Z0))
        object.__setattr__(self, "Z1", frozenset(self.Z1))
        overlap = self.Z0 & self.Z1
        if overlap:
            raise ValidationError(
                "Z0 and Z1 must be disjoint",
                field="signature",
                value=sorted(r.to_json() for r in overlap),
                invariant="cell.disjoint",
            )

    @property
    def degenerate_roots(self) -> frozenset[RootIndex]:
        return self.Z0 | self.Z1

    def is_closed(self) -> bool:
        """Check additive closure of the signature."""
        z0 = {(r.i, r.j) for r in self.Z0}
        z1 = {(r.i, r.j) for r in self.Z1}
        indices = {k for pair in z0 | z1 for k in pair}
        for i in indices:
            for j in indices:
                for k in indices:
                    if not i < j < k:
                        continue
                    if (i, j) in z0 and (j, k) in z0 and (i, k) not in z0:
                        return False
                    if (i, j) in z0 and (i, k) in z1 and (j, k) not in z1:
                        return False
                    if (i, k) in z1 and (j, k) in z0 and (i, j) not in z1:
                        return False
        return True

    def blocks(self, n: int) -> list[tuple[int, ...]]:
        """Partition of 1..n into coinciding-eigenvalue blocks."""
        parent = list(range(n + 1))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for root in self.degenerate_roots:
            if root.j > n:
                raise ValidationError(f"Root {root.to_json()} out of range for n={n}", field="n", value=n)
            parent[find(root.j)] = find(root.i)

        groups: dict[int, list[int]] = {}
        for k in range(1, n + 1):
            groups.setdefault(find(k), []).append(k)
        return sorted(tuple(g) for g in groups.values())

    def to_json(self) -> CellSignatureJSON:
        return {
            "Z0": [r.to_json() for r in sorted(self.Z0)],
            "Z1": [r.to_json() for r in sorted(self.Z1)],
        }

    @classmethod
    def from_json(cls, data: CellSignatureJSON) -> CellSignature:
        return cls(
            Z0=frozenset(RootIndex(*pair) for pair in data.get("Z0", [])),
            Z1=frozenset(RootIndex(*pair) for pair in data.get("Z1", [])),
        )

    @classmethod
    def from_pairs(cls, z0: Iterable[tuple[int, int]] = (), z1: Iterable[tuple[int, int]] = ()) -> CellSignature:
        return cls(frozenset(RootIndex(*p) for p in z0), frozenset(RootIndex(*p) for p in z1))
