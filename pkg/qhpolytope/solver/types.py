"""Options and reports for fiber solves."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..alcove.types import AlcovePoint
from ..exceptions import ValidationError
from ..qham.types import Configuration
from ..types import FeasibilityReportJSON, SolveStatus

NON_CERTIFICATE_NOTE = "NonConvergent is not a proof of infeasibility: no witness was found within the budget"


@dataclass(frozen=True)
class SolveOptions:
    """Budgets and thresholds for a fiber solve.

    Attributes
    ----------
    max_iters : int
        Iterations per restart
    restarts : int
        Number of Haar-random starting points
    step_init : float
        Length of the first trial step of each restart
    grad_tol : float
        Stop a restart when the gradient norm falls below this
    residual_tol : float
        Converged iff each objective term is below ``residual_tol**2``
    seed : int
        Root of the per-restart random streams
    armijo : float
        Sufficient-decrease constant of the line search
    step_floor : float
        A restart stops once an accepted step is shorter than this
    jobs : int
        Restarts run concurrently; results do not depend on it
    record_history : bool
        Keep the objective value after every accepted step
    """

    max_iters: int = 2000
    restarts: int = 8
    step_init: float = 0.1
    grad_tol: float = 1e-12
    residual_tol: float = 1e-8
    seed: int = 0
    armijo: float = 1e-4
    step_floor: float = 1e-12
    jobs: int = 1
    record_history: bool = False

    def __post_init__(self):
        for name in ("max_iters", "restarts", "jobs"):
            value = getattr(self, name)
            if int(value) != value or value <= 0:
                raise ValidationError(f"{name} must be a positive integer", field=name, value=value)
        for name in ("step_init", "grad_tol", "residual_tol", "armijo", "step_floor"):
            value = getattr(self, name)
            if not value > 0:
                raise ValidationError(f"{name} must be positive", field=name, value=value)
        if self.residual_tol >= 1:
            raise ValidationError("residual_tol must be below 1", field="residual_tol", value=self.residual_tol)
        if self.armijo >= 1:
            raise ValidationError("armijo must be below 1", field="armijo", value=self.armijo)
        if self.seed < 0:
            raise ValidationError("seed must be nonnegative", field="seed", value=self.seed)


@dataclass(slots=True)
class FeasibilityReport:
    """Outcome of a fiber solve.

    ``status == CONVERGED`` guarantees a witness whose residual is below
    ``residual_tol``. ``NON_CONVERGENT`` carries no certificate either way.
    """

    status: SolveStatus
    residual: float
    iterations: int
    restarts_used: int
    target: AlcovePoint
    residual_tol: float
    witness: Configuration | None = None
    beta_residual: float | None = None
    history: list[float] = field(default_factory=list)

    def __post_init__(self):
        if self.status is SolveStatus.CONVERGED and (self.witness is None or self.residual > self.residual_tol):
            raise ValidationError(
                "A converged report needs a witness within residual_tol",
                field="status",
                value=self.residual,
                invariant="report.converged_witness",
            )

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED

    def to_dict(self, include_witness: bool = False) -> FeasibilityReportJSON:
        payload: dict[str, Any] = {
            "status": self.status.value,
            "residual": self.residual,
            "beta_residual": self.beta_residual,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "target": self.target.to_json(),
            "residual_tol": self.residual_tol,
            "certificate": "witness" if self.converged else NON_CERTIFICATE_NOTE,
        }
        if include_witness and self.witness is not None:
            payload["witness"] = self.witness.to_json()
        return payload  # type: ignore[return-value]

    def to_json(self, include_witness: bool = False) -> str:
        return json.dumps(self.to_dict(include_witness), indent=2, sort_keys=True, default=str)
