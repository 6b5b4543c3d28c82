"""Surface-group data and configurations of the quasi-hamiltonian space.

A configuration is a point of ``(U x U)^g x C_1 x ... x C_l``: ``2g``
free special unitaries (the handles ``a_1, b_1, ..., a_g, b_g``) and one
element ``c_j`` of each prescribed conjugacy class (the punctures).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..alcove.types import AlcovePoint
from ..exceptions import ValidationError
from ..io import matrix_from_json, matrix_to_json
from ..types import ConfigurationJSON
from ..unitary.core import require_special_unitary
from ..unitary.spectra import ConjClassSpec, spectrum_to_alcove


@dataclass(frozen=True)
class SurfaceGroupData:
    """Rank, genus and puncture classes of a surface-group problem.

    Attributes
    ----------
    n : int
        Matrix size, at least 2
    genus : int
        Number of handles
    classes : tuple[ConjClassSpec, ...]
        One class per puncture
    """

    n: int
    genus: int
    classes: tuple[ConjClassSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.n < 2:
            raise ValidationError("n must be at least 2", field="n", value=self.n, invariant="data.rank")
        if self.genus < 0:
            raise ValidationError("genus must be nonnegative", field="genus", value=self.genus, invariant="data.genus")
        if self.genus == 0 and not self.classes:
            raise ValidationError(
                "Genus 0 needs at least one puncture class", field="classes", value=0, invariant="data.punctures"
            )
        for index, spec in enumerate(self.classes):
            if spec.n != self.n:
                raise ValidationError(
                    f"Class {index + 1} has size {spec.n}, expected {self.n}",
                    field="classes",
                    value=spec.to_json(),
                    invariant="data.class_size",
                )

    @property
    def l(self) -> int:
        return len(self.classes)

    def matches(self, other: SurfaceGroupData, atol: float = 1e-12) -> bool:
        """Same rank, genus and class labels up to ``atol``."""
        if (self.n, self.genus, self.l) != (other.n, other.genus, other.l):
            return False
        return all(
            np.allclose(a.lam.array, b.lam.array, rtol=0, atol=atol)
            for a, b in zip(self.classes, other.classes, strict=True)
        )

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "genus": self.genus, "classes": [c.to_json() for c in self.classes]}

    @classmethod
    def from_classes(cls, classes: Sequence[Sequence[float]], genus: int = 0, tol: float = 1e-8) -> SurfaceGroupData:
        specs = tuple(ConjClassSpec(AlcovePoint(tuple(c), tol=tol)) for c in classes)
        if not specs:
            raise ValidationError("At least one class is needed to infer n", field="classes", value=[])
        return cls(n=specs[0].n, genus=genus, classes=specs)


def _frozen(m: np.ndarray) -> np.ndarray:
    arr = np.array(m, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Configuration:
    """Immutable configuration ``(a_1, b_1, ..., a_g, b_g, c_1, ..., c_l)``.

    Class membership is checked from the spectra, so matrices from any
    source are accepted.

    Raises
    ------
    ValidationError
        On wrong counts, non-special-unitary entries or a puncture outside
        its class at tolerance ``tol``
    """

    data: SurfaceGroupData
    handles: tuple[np.ndarray, ...] = ()
    punctures: tuple[np.ndarray, ...] = ()
    tol: float = field(default=1e-8)

    def __post_init__(self):
        handles = tuple(_frozen(m) for m in self.handles)
        punctures = tuple(_frozen(m) for m in self.punctures)
        object.__setattr__(self, "handles", handles)
        object.__setattr__(self, "punctures", punctures)

        if len(handles) != 2 * self.data.genus:
            raise ValidationError(
                f"Expected {2 * self.data.genus} handle matrices, got {len(handles)}",
                field="handles",
                value=len(handles),
                invariant="config.handle_count",
            )
        if len(punctures) != self.data.l:
            raise ValidationError(
                f"Expected {self.data.l} puncture matrices, got {len(punctures)}",
                field="punctures",
                value=len(punctures),
                invariant="config.puncture_count",
            )

        for index, m in enumerate(handles):
            self._check_shape(m, f"handle {index + 1}")
            require_special_unitary(m, name=f"handle {index + 1}", tol=self.tol)
        for index, (m, spec) in enumerate(zip(punctures, self.data.classes, strict=True)):
            self._check_shape(m, f"puncture {index + 1}")
            require_special_unitary(m, name=f"puncture {index + 1}", tol=self.tol)
            found = spectrum_to_alcove(m, tol=max(self.tol, 1e-8))
            gap = float(np.max(np.abs(found.array - spec.lam.array)))
            if gap > self.tol:
                raise ValidationError(
                    f"Puncture {index + 1} is not in its prescribed class (gap {gap:.3e})",
                    field=f"puncture {index + 1}",
                    value=found.to_json(),
                    invariant="config.class_membership",
                )

    def _check_shape(self, m: np.ndarray, name: str) -> None:
        if m.shape != (self.data.n, self.data.n):
            raise ValidationError(
                f"{name} has shape {m.shape}, expected {(self.data.n, self.data.n)}",
                field=name,
                value=list(m.shape),
                invariant="config.shape",
            )

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def genus(self) -> int:
        return self.data.genus

    @property
    def l(self) -> int:
        return self.data.l

    def with_punctures(self, punctures: Sequence[np.ndarray]) -> Configuration:
        """Same data and handles, new punctures (validated)."""
        return Configuration(self.data, self.handles, tuple(punctures), tol=self.tol)

    def distance(self, other: Configuration) -> float:
        """Largest componentwise Frobenius distance."""
        mine = self.handles + self.punctures
        theirs = other.handles + other.punctures
        if len(mine) != len(theirs):
            raise ValidationError("Configurations have different shapes", field="configuration")
        return max((float(np.linalg.norm(a - b)) for a, b in zip(mine, theirs, strict=True)), default=0.0)

    def to_json(self) -> ConfigurationJSON:
        return {
            "n": self.n,
            "genus": self.genus,
            "classes": [c.to_json() for c in self.data.classes],
            "handles": [matrix_to_json(m) for m in self.handles],
            "punctures": [matrix_to_json(m) for m in self.punctures],
        }

    @classmethod
    def from_json(cls, payload: ConfigurationJSON, tol: float = 1e-8) -> Configuration:
        try:
            data = SurfaceGroupData(
                n=int(payload["n"]),
                genus=int(payload.get("genus", 0)),
                classes=tuple(ConjClassSpec.from_coords(c, tol=tol) for c in payload["classes"]),
            )
        except KeyError as e:
            raise ValidationError(f"Configuration JSON is missing {e}", field=str(e), invariant="config.format") from e
        handles = tuple(matrix_from_json(m) for m in payload.get("handles", []))
        punctures = tuple(matrix_from_json(m) for m in payload.get("punctures", []))
        return cls(data, handles, punctures, tol=tol)
