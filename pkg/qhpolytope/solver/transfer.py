"""Transfers between unitary chains and symmetric-unitary factorizations.

``transfer_from_symmetric`` turns special unitaries ``A_1, ..., A_l`` into
unitaries ``u_j`` with ``spec(u_j) = spec(A_j^T A_j)`` whose product is
``(A_1 ... A_l)^T (A_1 ... A_l)``. ``transfer_to_symmetric`` inverts this
on fixed points of the involution with product ``I``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..exceptions import NotBetaFixedError, ValidationError
from ..logger import get_logger
from ..unitary.core import dagger, require_special_unitary
from ..unitary.takagi import sqrt_symmetric

logger = get_logger("solver.transfer")


def _validated(mats: Sequence[np.ndarray], name: str, tol: float) -> list[np.ndarray]:
    if len(mats) == 0:
        raise ValidationError(f"{name} must contain at least one matrix", field=name, value=0)
    out = [require_special_unitary(m, name=f"{name}[{j}]", tol=tol) for j, m in enumerate(mats)]
    sizes = {m.shape[0] for m in out}
    if len(sizes) != 1:
        raise ValidationError(f"{name} mixes matrix sizes", field=name, value=sorted(sizes), invariant="config.shape")
    return out


def transfer_from_symmetric(a: Sequence[np.ndarray], tol: float = 1e-8) -> list[np.ndarray]:
    """``u_j = P_j^T (A_j^T A_j) conj(P_j)`` with ``P_j = A_{j+1} ... A_l``.

    Parameters
    ----------
    a : sequence of ndarray
        Special unitaries ``A_1, ..., A_l``
    tol : float, default 1e-8
        Validity tolerance for the inputs

    Returns
    -------
    list of ndarray
        ``u_1, ..., u_l``
    """
    factors = _validated(a, "A", tol)
    n = factors[0].shape[0]
    tail = np.eye(n, dtype=complex)
    out: list[np.ndarray] = [np.empty(0)] * len(factors)
    for j in range(len(factors) - 1, -1, -1):
        f = factors[j]
        out[j] = tail.T @ (f.T @ f) @ np.conj(tail)
        tail = f @ tail
    return out


def transfer_to_symmetric(
    w: Sequence[np.ndarray], tol: float = 1e-8, reconstruction: float = 1e-9
) -> list[np.ndarray]:
    """Special unitaries ``A_1 ... A_l = I`` with ``A_j^T A_j`` conjugate to ``w_j``.

    Runs the recursion from the last factor: ``A_l`` is the symmetric
    square root of ``w_l``; for ``j = l-1, ..., 2`` the matrix
    ``m_j = conj(B) w_j B^T`` with ``B = A_{j+1} ... A_l`` must be symmetric
    and ``A_j`` is its symmetric square root; ``A_1 = (A_2 ... A_l)^{-1}``.

    Raises
    ------
    ValidationError
        If the inputs are not special unitaries or their product is not ``I``
    NotBetaFixedError
        If some ``m_j`` is not symmetric within ``tol * n``
    EigenFailureError
        If a square root misses the Takagi reconstruction bound
    """
    chain = _validated(w, "w", tol)
    n, l = chain[0].shape[0], len(chain)
    product = np.linalg.multi_dot(chain) if l > 1 else chain[0]
    distance = float(np.linalg.norm(product - np.eye(n)))
    if distance > tol:
        raise ValidationError(
            "Product of the chain is not the identity", field="w", value=distance, invariant="transfer.product_one"
        )

    if l == 1:
        return [sqrt_symmetric(chain[0], tol=tol, reconstruction=reconstruction)]

    factors: list[np.ndarray] = [np.empty(0)] * l
    factors[-1] = sqrt_symmetric(chain[-1], tol=tol, reconstruction=reconstruction)
    tail = factors[-1]
    for j in range(l - 2, 0, -1):
        m = np.conj(tail) @ chain[j] @ tail.T
        asymmetry = float(np.linalg.norm(m - m.T))
        if asymmetry > tol * n:
            raise NotBetaFixedError(
                f"Component {j + 1} breaks the fixed-point relations", index=j + 1, asymmetry=asymmetry, tol=tol
            )
        factors[j] = sqrt_symmetric((m + m.T) / 2, tol=tol, reconstruction=reconstruction)
        tail = factors[j] @ tail
    factors[0] = dagger(tail)

    logger.debug(f"transfer_to_symmetric: l={l}, n={n}, input product distance {distance:.3e}")
    return factors
