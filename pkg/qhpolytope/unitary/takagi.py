"""Takagi factorization of symmetric unitaries and symmetric square roots.

A symmetric unitary ``w`` satisfies ``w conj(v) = lambda conj(v)`` whenever
``w v = lambda v``, so each eigenspace is closed under conjugation and has
a real orthonormal basis. Collecting those bases gives ``w = O diag(e^{i phi}) O^T``
with ``O`` real orthogonal.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ..exceptions import EigenFailureError, NotSymmetricError, ValidationError
from ..logger import get_logger
from .core import dagger

logger = get_logger("unitary.takagi")


# Eigenvalues closer than this are treated as one eigenspace.
CLUSTER_TOL = 1e-6
# Cluster tolerances tried in turn until the factors reconstruct the input.
_CLUSTER_SCALES = (1.0, 1e-3, 1e3)


def _clusters(eigenvalues: np.ndarray, cluster_tol: float) -> list[np.ndarray]:
    """Group indices of unit-modulus eigenvalues that chain within ``cluster_tol``."""
    order = np.argsort(np.angle(eigenvalues))
    groups: list[list[int]] = [[int(order[0])]]
    for prev, cur in zip(order, order[1:], strict=False):
        if abs(eigenvalues[cur] - eigenvalues[prev]) <= cluster_tol:
            groups[-1].append(int(cur))
        else:
            groups.append([int(cur)])
    # Angles wrap at -pi/pi.
    if len(groups) > 1 and abs(eigenvalues[order[0]] - eigenvalues[order[-1]]) <= cluster_tol:
        groups[0] = groups.pop() + groups[0]
    return [np.array(g) for g in groups]


def _real_basis(z: np.ndarray) -> np.ndarray:
    """Real orthonormal basis of a conjugation-closed column space."""
    k = z.shape[1]
    projector = np.real(z @ dagger(z))
    _, vectors = np.linalg.eigh(projector)
    return vectors[:, -k:]


def _split_cluster(basis: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Rotate a real cluster basis onto eigenvectors of ``w``.

    The restriction ``B = basis^T w basis`` is a symmetric unitary whose
    eigenvalues all lie near the cluster mean ``e^{i theta}``. After
    rotating the mean to 1, ``Im(e^{-i theta} B)`` is real symmetric with
    eigenvalues ``sin(eps_k)``, which is strictly increasing in the small
    offsets ``eps_k``, so its eigenvectors separate every distinct phase.
    """
    block = basis.T @ w @ basis
    mean = np.trace(block)
    centred = block * (np.conj(mean) / abs(mean)) if abs(mean) > 0 else block
    offsets = np.imag(centred)
    _, rotation = np.linalg.eigh((offsets + offsets.T) / 2)
    return basis @ rotation


def _factor(w: np.ndarray, cluster_tol: float) -> tuple[np.ndarray, np.ndarray]:
    n = w.shape[0]
    schur_form, schur_vectors = scipy.linalg.schur(w, output="complex")
    eigenvalues = np.diagonal(schur_form)

    columns = []
    for group in _clusters(eigenvalues, cluster_tol):
        basis = _real_basis(schur_vectors[:, group])
        if basis.shape[1] > 1:
            basis = _split_cluster(basis, w)
        columns.append(basis)
    o = np.hstack(columns)

    # Clean up orthogonality lost across clusters.
    u_factor, _, vh = np.linalg.svd(o)
    o = u_factor @ vh

    pivots = np.argmax(np.abs(o), axis=0)
    signs = np.sign(o[pivots, np.arange(n)])
    o = o * np.where(signs == 0, 1.0, signs)

    phi = np.angle(np.diagonal(o.T @ w @ o))
    phi = np.where(phi <= -np.pi, phi + 2 * np.pi, phi)

    order = np.lexsort((phi, pivots))
    return o[:, order], phi[order]


def reconstruction_error(o: np.ndarray, phi: np.ndarray, w: np.ndarray) -> float:
    """``|O diag(e^{i phi}) O^T - w|_F``."""
    return float(np.linalg.norm((o * np.exp(1j * phi)) @ o.T - w))


def takagi(
    w: np.ndarray,
    tol: float = 1e-8,
    cluster_tol: float = CLUSTER_TOL,
    reconstruction: float = 1e-9,
) -> tuple[np.ndarray, np.ndarray]:
    """Factor a symmetric unitary as ``O diag(e^{i phi}) O^T``.

    Every factorization is checked against the input. The allowed error is
    ``reconstruction * n`` plus the input's own distance from unitarity
    ``|w w^H - I|_F``. A failed check is retried with a finer and then a
    coarser ``cluster_tol``.

    Parameters
    ----------
    w : ndarray
        Symmetric unitary matrix
    tol : float, default 1e-8
        Allowed asymmetry ``|w - w^T|_F / n``
    cluster_tol : float, default 1e-6
        Eigenvalue distance below which eigenvectors are merged into one space
    reconstruction : float, default 1e-9
        Per-dimension bound on the reconstruction error

    Returns
    -------
    O : ndarray
        Real orthogonal matrix; columns ordered by their largest entry's
        index, signed so that entry is positive
    phi : ndarray
        Phases in (-pi, pi]

    Raises
    ------
    NotSymmetricError
        If ``w`` is not symmetric within ``tol``
    EigenFailureError
        If no cluster tolerance reconstructs ``w``
    """
    w = np.asarray(w, dtype=complex)
    n = w.shape[0]
    asymmetry = float(np.linalg.norm(w - w.T))
    if asymmetry > tol * n:
        raise NotSymmetricError(f"Matrix is not symmetric within {tol}", asymmetry=asymmetry, tol=tol)
    w = (w + w.T) / 2

    bound = reconstruction * n + float(np.linalg.norm(w @ dagger(w) - np.eye(n)))
    error = np.inf
    for scale in _CLUSTER_SCALES:
        o, phi = _factor(w, cluster_tol * scale)
        error = reconstruction_error(o, phi, w)
        if error <= bound:
            return o, phi
        logger.debug(f"takagi: cluster_tol {cluster_tol * scale:.1e} misses by {error:.3e} (bound {bound:.3e})")

    raise EigenFailureError(
        "Takagi factors do not reconstruct the input", {"error": error, "bound": bound, "cluster_tol": cluster_tol}
    )


def sqrt_symmetric(w: np.ndarray, tol: float = 1e-8, reconstruction: float = 1e-9) -> np.ndarray:
    """Symmetric special unitary ``A`` with ``A^T A = A^2 = w``.

    Halves the Takagi phases. When the phases sum to an odd multiple of
    ``2 pi`` the last entry attaining the largest phase is lowered by
    ``2 pi`` first, so ``det A = 1``.

    Raises
    ------
    NotSymmetricError
        Propagated from ``takagi``
    EigenFailureError
        Propagated from ``takagi``
    ValidationError
        If ``det w`` is not 1 within ``tol``
    """
    o, phi = takagi(w, tol=tol, reconstruction=reconstruction)
    turns = phi.sum() / (2 * np.pi)
    k = int(np.rint(turns))
    if abs(turns - k) > max(tol, 1e-9) * len(phi):
        raise ValidationError(
            "Square root needs det(w) = 1", field="w", value=float(turns - k), invariant="unitary.det_one"
        )
    if k % 2:
        index = len(phi) - 1 - int(np.argmax(phi[::-1]))
        phi = phi.copy()
        phi[index] -= 2 * np.pi
    return (o * np.exp(0.5j * phi)) @ o.T
