"""Configuration management for qhpolytope.

Tolerances, solver budgets and sampling parameters live in dataclass
sections that can be loaded from YAML and overridden from the
environment. Algorithms take tolerances as explicit arguments; this module
only supplies defaults.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

import yaml

from .exceptions import ConfigurationError
from .logger import get_logger

logger = get_logger("config")


@dataclass
class ToleranceConfig:
    """Named tolerances used across the package."""

    classify: float = 1e-8
    reconstruction: float = 1e-9
    class_membership: float = 1e-8
    kernel_rtol: float = 1e-8
    witness: float = 1e-8
    phase_guard: float = 1e-12


@dataclass
class SolverConfig:
    """Defaults for fiber solves."""

    max_iters: int = 2000
    restarts: int = 8
    step_init: float = 0.1
    grad_tol: float = 1e-12
    residual_tol: float = 1e-8
    armijo: float = 1e-4
    step_floor: float = 1e-12


@dataclass
class SamplingConfig:
    """Defaults for the polytope lab."""

    chunk_size: int = 4096
    jobs: int = 1
    grid: int = 21
    pairs: int = 200
    inset: float = 0.05


@dataclass
class OutputConfig:
    """Configuration for emitted artifacts."""

    include_witness: bool = False


class Config:
    """Main configuration class for qhpolytope.

    Sections:
    - tolerances: numeric thresholds (classification, reconstruction, kernels)
    - solver: iteration and restart budgets
    - sampling: chunking, parallelism, verification grids
    - output: artifact options
    """

    def __init__(self, config_path: str | None = None):
        """Initialize configuration.

        Parameters
        ----------
        config_path : str, optional
            Path to YAML configuration file
        """
        self.tolerances = ToleranceConfig()
        self.solver = SolverConfig()
        self.sampling = SamplingConfig()
        self.output = OutputConfig()

        if config_path:
            self.load_from_file(config_path)

        self._load_from_env()

    def load_from_file(self, config_path: str) -> None:
        """Load configuration from a YAML file.

        Unknown keys inside a section are ignored with a warning.

        Parameters
        ----------
        config_path : str
            Path to YAML configuration file
        """
        config_file = Path(config_path)
        if not config_file.exists():
            raise ConfigurationError(f"Configuration file not found: {config_path}", config_file=config_path)

        with open(config_file, encoding="utf-8") as f:
            try:
                data = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigurationError(f"Malformed YAML: {e}", config_file=config_path) from e

        if not data:
            return

        for section_name in ("tolerances", "solver", "sampling", "output"):
            if section_name in data:
                self._apply_section(getattr(self, section_name), data[section_name] or {}, section_name)

    def _apply_section(self, section: Any, values: dict[str, Any], section_name: str) -> None:
        known = {f.name: f for f in fields(section)}
        for key, value in values.items():
            if key not in known:
                logger.warning(f"Ignoring unknown key {section_name}.{key}")
                continue
            current = getattr(section, key)
            setattr(section, key, type(current)(value))

    def _load_from_env(self) -> None:
        """Load overrides from environment variables."""
        jobs_env = os.getenv("QHPOLYTOPE_JOBS")
        if jobs_env:
            self.sampling.jobs = int(jobs_env)

        restarts_env = os.getenv("QHPOLYTOPE_RESTARTS")
        if restarts_env:
            self.solver.restarts = int(restarts_env)

        max_iters_env = os.getenv("QHPOLYTOPE_MAX_ITERS")
        if max_iters_env:
            self.solver.max_iters = int(max_iters_env)

        residual_env = os.getenv("QHPOLYTOPE_RESIDUAL_TOL")
        if residual_env:
            self.solver.residual_tol = float(residual_env)

    def apply_tolerances(self, overrides: dict[str, float]) -> None:
        """Override tolerance fields by name, e.g. from a problem spec."""
        self._apply_section(self.tolerances, overrides, "tolerances")

    def solve_options(self, seed: int = 0, **overrides: Any):
        """Build ``SolveOptions`` from the solver section.

        Parameters
        ----------
        seed : int
            Root seed for restart streams
        **overrides
            Field overrides, e.g. ``restarts=4``

        Returns
        -------
        SolveOptions
        """
        from .solver.types import SolveOptions

        values = asdict(self.solver)
        values.update({k: v for k, v in overrides.items() if v is not None})
        values.setdefault("jobs", self.sampling.jobs)
        return SolveOptions(seed=seed, **values)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tolerances": asdict(self.tolerances),
            "solver": asdict(self.solver),
            "sampling": asdict(self.sampling),
            "output": asdict(self.output),
        }

    def save_to_file(self, config_path: str) -> None:
        """Save current configuration to a YAML file.

        Parameters
        ----------
        config_path : str
            Path where to save the configuration file
        """
        config_file = Path(config_path)
        config_file.parent.mkdir(parents=True, exist_ok=True)

        with open(config_file, "w", encoding="utf-8") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)

    def validate(self) -> list[str]:
        """Validate configuration and return any issues.

        Returns
        -------
        list[str]
            List of validation errors (empty if valid)
        """
        errors = []

        for name, value in asdict(self.tolerances).items():
            if value <= 0:
                errors.append(f"Tolerance {name} must be positive, got {value}")
        if self.tolerances.classify >= 0.5:
            errors.append("Classification tolerance must be below 1/2")

        if self.solver.max_iters <= 0 or self.solver.restarts <= 0:
            errors.append("Solver budgets (max_iters, restarts) must be positive")
        if not 0 < self.solver.residual_tol < 1:
            errors.append(f"residual_tol must lie in (0, 1), got {self.solver.residual_tol}")
        if self.solver.step_init <= 0 or self.solver.step_floor <= 0:
            errors.append("Step sizes must be positive")

        if self.sampling.chunk_size <= 0:
            errors.append("chunk_size must be positive")
        if self.sampling.jobs <= 0:
            errors.append("jobs must be positive")
        if self.sampling.grid < 1 or self.sampling.pairs < 1:
            errors.append("grid and pairs must be at least 1")
        if not 0 <= self.sampling.inset < 0.5:
            errors.append(f"inset must lie in [0, 1/2), got {self.sampling.inset}")

        return errors


def create_default_config(config_path: str) -> Config:
    """Create a default configuration file.

    Parameters
    ----------
    config_path : str
        Path where to create the configuration file

    Returns
    -------
    Config
        Default configuration instance
    """
    config = Config()
    config.save_to_file(config_path)
    return config
