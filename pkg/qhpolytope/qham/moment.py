"""Momentum map, diagonal conjugation and the involution beta."""

from __future__ import annotations

from collections.abc import Sequence
from functools import reduce

import numpy as np

from ..exceptions import GenusUnsupportedError
from ..unitary.core import commutator, dagger
from .types import Configuration


def moment_of(handles: Sequence[np.ndarray], punctures: Sequence[np.ndarray], n: int) -> np.ndarray:
    """``[a_1, b_1] ... [a_g, b_g] c_1 ... c_l`` for raw matrices."""
    factors = [commutator(handles[2 * i], handles[2 * i + 1]) for i in range(len(handles) // 2)]
    factors.extend(punctures)
    return reduce(np.matmul, factors, np.eye(n, dtype=complex))


def moment(cfg: Configuration) -> np.ndarray:
    """Group-valued momentum map of the diagonal conjugation action.

    Parameters
    ----------
    cfg : Configuration
        Point of ``(U x U)^g x C_1 x ... x C_l``

    Returns
    -------
    ndarray
        ``[a_1, b_1] ... [a_g, b_g] c_1 ... c_l``
    """
    return moment_of(cfg.handles, cfg.punctures, cfg.n)


def conjugate_configuration(u: np.ndarray, cfg: Configuration) -> Configuration:
    """Diagonal action ``u . cfg``: conjugate every component by ``u``."""
    u_dag = dagger(u)
    return Configuration(
        cfg.data,
        tuple(u @ m @ u_dag for m in cfg.handles),
        tuple(u @ m @ u_dag for m in cfg.punctures),
        tol=cfg.tol,
    )


def beta_punctures(punctures: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Involution on genus-0 tuples of unitaries.

    With ``P_j = c_{j+1} ... c_l`` (``P_l = I``), component ``j`` is
    ``P_j^T c_j^T (P_j^T)^{-1}``; for unitary ``P_j`` the inverse transpose
    is ``conj(P_j)``.
    """
    l = len(punctures)
    if l == 0:
        return []
    n = punctures[0].shape[0]
    tail = np.eye(n, dtype=complex)
    out: list[np.ndarray] = [np.empty(0)] * l
    for j in range(l - 1, -1, -1):
        c = punctures[j]
        out[j] = tail.T @ c.T @ np.conj(tail)
        tail = c @ tail
    return out


def _require_genus_zero(cfg: Configuration) -> None:
    if cfg.genus != 0:
        raise GenusUnsupportedError("The involution is only implemented in genus 0", genus=cfg.genus)


def beta(cfg: Configuration) -> Configuration:
    """Apply the involution to a genus-0 configuration.

    The result stays in the same classes, ``beta(beta(cfg)) = cfg`` and
    ``moment(beta(cfg)) = moment(cfg)^T``.

    Raises
    ------
    GenusUnsupportedError
        If ``cfg.genus >= 1``
    """
    _require_genus_zero(cfg)
    return cfg.with_punctures(beta_punctures(cfg.punctures))


def beta_residual_of(punctures: Sequence[np.ndarray]) -> float:
    return max(
        (float(np.linalg.norm(b - c)) for b, c in zip(beta_punctures(punctures), punctures, strict=True)),
        default=0.0,
    )


def beta_residual(cfg: Configuration) -> float:
    """``max_j |beta(cfg)_j - c_j|_F``; zero exactly on fixed points."""
    _require_genus_zero(cfg)
    return beta_residual_of(cfg.punctures)


def fiber_distance(cfg: Configuration, target: np.ndarray | None = None) -> float:
    """Frobenius distance from ``moment(cfg)`` to ``target`` (identity by default)."""
    target = np.eye(cfg.n) if target is None else target
    return float(np.linalg.norm(moment(cfg) - target))
