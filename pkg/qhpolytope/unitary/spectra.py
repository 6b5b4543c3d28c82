"""Spectra of special unitaries and conjugacy-class labels."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..alcove.projection import alcove_project, alcove_project_many
from ..alcove.types import AlcovePoint
from ..exceptions import EigenFailureError


@dataclass(frozen=True)
class ConjClassSpec:
    """A conjugacy class of SU(n), labelled by its alcove point."""

    lam: AlcovePoint

    @property
    def n(self) -> int:
        return self.lam.n

    def representative(self) -> np.ndarray:
        """Diagonal element ``exp(lam)`` of the class."""
        return self.lam.exp()

    def to_json(self) -> list[float]:
        return self.lam.to_json()

    @classmethod
    def from_coords(cls, coords: Sequence[float], tol: float = 1e-8) -> ConjClassSpec:
        return cls(AlcovePoint(tuple(coords), tol=tol))

    @classmethod
    def identity(cls, n: int) -> ConjClassSpec:
        return cls(AlcovePoint.identity(n))


def alcove_exp(x: AlcovePoint | Sequence[float]) -> np.ndarray:
    """``diag(e^{2 pi i x_k})`` for an alcove point or raw coordinates."""
    coords = x.array if isinstance(x, AlcovePoint) else np.asarray(x, dtype=float)
    return np.diag(np.exp(2j * np.pi * coords))


def eigenphases(u: np.ndarray) -> np.ndarray:
    """Eigenphases in full turns for a matrix or a stack of matrices.

    Raises
    ------
    EigenFailureError
        If LAPACK does not converge
    """
    try:
        eigenvalues = np.linalg.eigvals(u)
    except np.linalg.LinAlgError as e:
        raise EigenFailureError(f"Eigensolver did not converge: {e}") from e
    return np.angle(eigenvalues) / (2 * np.pi)


def spectrum_to_alcove(u: np.ndarray, tol: float = 1e-8, guard: float = 1e-12) -> AlcovePoint:
    """Alcove representative of the conjugacy class of ``u``.

    Parameters
    ----------
    u : ndarray
        Special unitary matrix
    tol : float, default 1e-8
        Integral phase-sum tolerance
    guard : float, default 1e-12
        Branch-cut guard band

    Returns
    -------
    AlcovePoint
        Point ``x`` with ``exp(x)`` conjugate to ``u``
    """
    return alcove_project(eigenphases(np.asarray(u, dtype=complex)), tol=tol, guard=guard)


def spectra_to_alcove(stack: np.ndarray, tol: float = 1e-8, guard: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Batched ``spectrum_to_alcove`` returning ``(points, ok_mask)``."""
    return alcove_project_many(eigenphases(stack), tol=tol, guard=guard)
