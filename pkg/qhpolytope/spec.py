"""Problem specifications read by the command line.

A problem spec names the rank, genus and puncture classes of a surface
group problem together with a seed, a sample count and tolerance
overrides. Specs are JSON or YAML documents validated with pydantic.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .alcove.types import AlcovePoint
from .config import ToleranceConfig
from .exceptions import ConfigurationError, ValidationError
from .qham.types import SurfaceGroupData
from .types import ProblemSpecJSON
from .unitary.spectra import ConjClassSpec

_TOLERANCE_NAMES = frozenset(ToleranceConfig.__dataclass_fields__)


class ProblemSpec(BaseModel):
    """Validated problem description.

    Example
    -------
    ``{"n": 2, "genus": 0, "classes": [[0.2, -0.2], [0.15, -0.15]], "seed": 7}``
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(ge=2)
    genus: int = Field(default=0, ge=0)
    classes: list[list[float]] = Field(default_factory=list)
    seed: int = Field(default=0, ge=0)
    samples: int = Field(default=10000, ge=1)
    tolerances: dict[str, float] = Field(default_factory=dict)

    @field_validator("tolerances")
    @classmethod
    def _known_tolerances(cls, value: dict[str, float]) -> dict[str, float]:
        unknown = sorted(set(value) - _TOLERANCE_NAMES)
        if unknown:
            raise ValueError(f"unknown tolerance names {unknown}; expected a subset of {sorted(_TOLERANCE_NAMES)}")
        for name, tol in value.items():
            if not tol > 0:
                raise ValueError(f"tolerance {name} must be positive")
        return value

    @model_validator(mode="after")
    def _classes_match_rank(self) -> ProblemSpec:
        for index, row in enumerate(self.classes):
            if len(row) != self.n:
                raise ValueError(f"class {index + 1} has {len(row)} coordinates, expected {self.n}")
        if self.genus == 0 and not self.classes:
            raise ValueError("genus 0 needs at least one puncture class")
        return self

    @property
    def class_tol(self) -> float:
        return self.tolerances.get("class_membership", 1e-8)

    def surface_data(self) -> SurfaceGroupData:
        """Build the validated ``SurfaceGroupData``; classes are checked as alcove points."""
        specs = tuple(ConjClassSpec(AlcovePoint(tuple(row), tol=self.class_tol)) for row in self.classes)
        return SurfaceGroupData(self.n, self.genus, specs)

    def to_json(self) -> ProblemSpecJSON:
        return self.model_dump()  # type: ignore[return-value]

    @classmethod
    def from_mapping(cls, payload: Any) -> ProblemSpec:
        try:
            return cls.model_validate(payload)
        except pydantic.ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(p) for p in first.get("loc", ())) or None
            raise ValidationError(
                f"Invalid problem spec: {first.get('msg')}", field=field, value=first.get("input"), invariant="spec"
            ) from e

    @classmethod
    def load(cls, path: str | Path) -> ProblemSpec:
        """Read a spec from a ``.json``, ``.yaml`` or ``.yml`` file."""
        spec_file = Path(path)
        if not spec_file.exists():
            raise ConfigurationError(f"Problem spec not found: {path}", config_file=str(path))
        text = spec_file.read_text(encoding="utf-8")
        try:
            payload = yaml.safe_load(text) if spec_file.suffix in (".yaml", ".yml") else json.loads(text)
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigurationError(f"Malformed problem spec: {e}", config_file=str(path)) from e
        return cls.from_mapping(payload)
