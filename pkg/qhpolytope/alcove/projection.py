"""Canonical projection of spectra into the closed Weyl alcove."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..exceptions import NonIntegralSumError
from .types import AlcovePoint


def canonical_phases(phases: np.ndarray | Sequence[float], guard: float = 1e-12) -> np.ndarray:
    """Reduce phases to [0, 1) by fractional part.

    Values within ``guard`` below 1 are really 0 seen from the wrong side of
    the branch cut; they are moved to just below 0 instead.
    """
    values = np.mod(np.asarray(phases, dtype=float), 1.0)
    return np.where(values >= 1.0 - guard, values - 1.0, values)


def alcove_project_many(
    phases: np.ndarray, tol: float = 1e-8, guard: float = 1e-12
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized projection of a batch of spectra.

    Parameters
    ----------
    phases : ndarray, shape (N, n)
        Eigenphases in units of full turns
    tol : float, default 1e-8
        Allowed deviation of the phase sum from an integer
    guard : float, default 1e-12
        Guard band for the fractional-part reduction

    Returns
    -------
    points : ndarray, shape (N, n)
        Alcove coordinates, descending with zero sum
    ok : ndarray of bool, shape (N,)
        False where the phase sum was not integral; those rows are undefined
    """
    p = canonical_phases(np.atleast_2d(phases), guard)
    n = p.shape[1]
    p = -np.sort(-p, axis=1)

    total = p.sum(axis=1)
    m = np.rint(total)
    ok = np.abs(total - m) <= tol
    m = np.clip(m, 0, n - 1).astype(int)

    shift = np.arange(n)[None, :] < m[:, None]
    x = p - shift
    x = -np.sort(-x, axis=1)
    x -= x.mean(axis=1, keepdims=True)
    return x, ok


def alcove_project(
    phases: np.ndarray | Sequence[float], tol: float = 1e-8, guard: float = 1e-12
) -> AlcovePoint:
    """Map the eigenphases of a special unitary to its alcove representative.

    Sorts descending, subtracts 1 from the ``m`` largest entries where ``m``
    is the (integral) phase sum, and re-sorts.

    Raises
    ------
    NonIntegralSumError
        If the phase sum is further than ``tol`` from an integer
    """
    values = np.asarray(phases, dtype=float).ravel()
    points, ok = alcove_project_many(values[None, :], tol=tol, guard=guard)
    if not ok[0]:
        canon = canonical_phases(values, guard)
        raise NonIntegralSumError(
            f"Phase sum {canon.sum():.3e} is not an integer", phase_sum=float(canon.sum()), tol=tol
        )
    return AlcovePoint(tuple(points[0]), tol=max(tol, 1e-12))
