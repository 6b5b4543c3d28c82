"""Custom exception classes for qhpolytope.

Errors split into two families. Tooling and input errors (bad data,
inconsistent tolerances, failed eigensolvers) mean the computation could
not be carried out. Outcome errors (``NoWitnessError``, ``NotInFiberError``)
mean the computation ran and found no certificate; the CLI maps them to a
distinct exit status.
"""

import logging
from typing import Any

import numpy as np

from .logger import get_logger


class QHPolytopeError(Exception):
    """Base exception class for all qhpolytope errors.

    Args:
        message: Human-readable description of the error.
        details: Optional dictionary containing additional error context.

    Attributes:
        message: The error message string.
        details: Dictionary of additional error context information.
        invariant: Short name of the violated invariant, echoed by the CLI.
    """

    invariant: str = "qhpolytope"
    log_level: int = logging.ERROR

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

        logger = get_logger("exceptions")
        logger.log(self.log_level, f"{self.__class__.__name__}: {message}", extra={"details": self.details})

    def __str__(self):
        base_str = self.message
        if self.details:
            details_str = ", ".join(f"{k}: {v}" for k, v in self.details.items())
            return f"{base_str} ({details_str})"
        return base_str

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used for CLI error objects."""
        return {
            "error": self.__class__.__name__,
            "invariant": self.invariant,
            "message": self.message,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


class ValidationError(QHPolytopeError):
    """Exception raised when an input violates a documented invariant.

    Args:
        message: Description of the validation failure.
        field: Name of the field that failed validation.
        value: The invalid value that was provided.
        invariant: Name of the violated invariant, e.g. ``"alcove.descending"``.
    """

    invariant = "validation"

    def __init__(self, message: str, field: str | None = None, value: Any = None, invariant: str | None = None):
        if invariant:
            self.invariant = invariant
        super().__init__(message)
        self.field = field
        self.value = value
        self.details = {"field": field, "value": value}


class ConfigurationError(QHPolytopeError):
    """Exception raised for unreadable or inconsistent configuration.

    Args:
        message: Description of the configuration problem.
        config_file: Path to the configuration file with issues.
        missing_fields: List of required fields that are missing.
    """

    invariant = "config"

    def __init__(self, message: str, config_file: str | None = None, missing_fields: list | None = None):
        super().__init__(message)
        self.config_file = config_file
        self.missing_fields = missing_fields or []
        self.details = {"config_file": config_file, "missing_fields": self.missing_fields}


class InconsistentToleranceError(QHPolytopeError):
    """A root value lies within tolerance of both 0 and 1."""

    invariant = "cell.tolerance"

    def __init__(self, message: str, root: tuple[int, int] | None = None, value: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.root = root
        self.value = value
        self.tol = tol
        self.details = {"root": root, "value": value, "tol": tol}


class NonIntegralSumError(QHPolytopeError):
    """Eigenphases of a special unitary must sum to an integer."""

    invariant = "alcove.integral_sum"

    def __init__(self, message: str, phase_sum: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.phase_sum = phase_sum
        self.tol = tol
        self.details = {"phase_sum": phase_sum, "tol": tol}


class EigenFailureError(QHPolytopeError):
    """The eigensolver did not converge."""

    invariant = "eigensolver"


class NotSymmetricError(QHPolytopeError):
    """Input to a Takagi-based routine is not a symmetric unitary."""

    invariant = "symmetric_unitary"

    def __init__(self, message: str, asymmetry: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.asymmetry = asymmetry
        self.tol = tol
        self.details = {"asymmetry": asymmetry, "tol": tol}


class GenusUnsupportedError(QHPolytopeError):
    """The involution on configurations is only defined in genus 0."""

    invariant = "beta.genus_zero"

    def __init__(self, message: str, genus: int | None = None):
        super().__init__(message)
        self.genus = genus
        self.details = {"genus": genus}


class NoWitnessError(QHPolytopeError):
    """No decomposition witness was found at the requested tolerance.

    This is a mathematical outcome, not a tooling failure.
    """

    invariant = "decomposable"
    log_level = logging.INFO

    def __init__(self, message: str, residual: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.residual = residual
        self.tol = tol
        self.details = {"residual": residual, "tol": tol}


class NotInFiberError(QHPolytopeError):
    """Configuration's momentum value is not the identity within tolerance."""

    invariant = "moment.identity"
    log_level = logging.INFO

    def __init__(self, message: str, distance: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.distance = distance
        self.tol = tol
        self.details = {"distance": distance, "tol": tol}


class NotBetaFixedError(QHPolytopeError):
    """Chain handed to the symmetric transfer is not a fixed point of the involution."""

    invariant = "beta.fixed"

    def __init__(self, message: str, index: int | None = None, asymmetry: float | None = None, tol: float | None = None):
        super().__init__(message)
        self.index = index
        self.asymmetry = asymmetry
        self.tol = tol
        self.details = {"index": index, "asymmetry": asymmetry, "tol": tol}


class DataMismatchError(QHPolytopeError):
    """Two clouds were generated from different surface-group data."""

    invariant = "cloud.data"


class AmbiguousCellError(QHPolytopeError):
    """Two distinct cells attain the maximal orbit dimension on a cloud."""

    invariant = "cell.dominant_unique"

    def __init__(self, message: str, signatures: list | None = None, orbit_dim: int | None = None):
        super().__init__(message)
        self.signatures = signatures or []
        self.orbit_dim = orbit_dim
        self.details = {"signatures": self.signatures, "orbit_dim": orbit_dim}


OUTCOME_ERRORS = (NoWitnessError, NotInFiberError)


def wrap_exception(original_exception: Exception, context: str | None = None) -> QHPolytopeError:
    """Wrap a generic exception in the matching qhpolytope exception.

    Args:
        original_exception: The original exception to wrap.
        context: Optional context description for the error.

    Returns:
        Appropriate QHPolytopeError subclass wrapping the original exception.
    """
    if isinstance(original_exception, QHPolytopeError):
        return original_exception

    logger = get_logger("exceptions")
    message = str(original_exception)

    if context:
        message = f"{context}: {message}"

    logger.debug(f"Wrapping exception: {type(original_exception).__name__} -> {message}")

    if isinstance(original_exception, np.linalg.LinAlgError):
        return EigenFailureError(message)
    elif isinstance(original_exception, FileNotFoundError):
        return ConfigurationError(message, config_file=getattr(original_exception, "filename", None))
    elif isinstance(original_exception, OSError):
        return ConfigurationError(message)
    elif isinstance(original_exception, ValueError | TypeError | KeyError):
        # pydantic.ValidationError subclasses ValueError
        return ValidationError(message)
    else:
        return QHPolytopeError(message)


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value
