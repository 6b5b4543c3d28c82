"""Decomposability of genus-0 configurations.

A tuple ``(c_1, ..., c_l)`` is decomposable when ``c_j = w_j w_{j+1}^{-1}``
(indices cyclic) for symmetric special unitaries ``w_j``. That happens
exactly when some symmetric unitary ``phi`` intertwines the tuple with its
image under the involution: ``beta(c)_j phi = phi c_j`` for all ``j``.
"""

from __future__ import annotations

import numpy as np

from ..exceptions import GenusUnsupportedError, NoWitnessError, NotInFiberError
from ..logger import get_logger, log_function_call
from ..unitary.core import dagger, is_special_unitary, polar_unitary, to_special
from ..unitary.sampling import rng_stream
from ..unitary.takagi import sqrt_symmetric
from .moment import beta_punctures, beta_residual_of, fiber_distance
from .types import Configuration

logger = get_logger("qham.decomposition")

# Stream key for random kernel combinations.
_TWIST_STREAM = 5


def _intertwiner_residual(betas: list[np.ndarray], punctures: tuple[np.ndarray, ...], phi: np.ndarray) -> float:
    return max(float(np.linalg.norm(b @ phi - phi @ c)) for b, c in zip(betas, punctures, strict=True))


def _transpose_permutation(n: int) -> np.ndarray:
    """Permutation matrix ``T`` with ``vec(X^T) = T vec(X)`` in row-major order."""
    index = np.arange(n * n).reshape(n, n).T.ravel()
    return np.eye(n * n)[index]


def _candidate(vector: np.ndarray, n: int) -> np.ndarray | None:
    x = vector.reshape(n, n)
    x = (x + x.T) / 2
    if np.linalg.norm(x) == 0:
        return None
    phi = polar_unitary(x)
    phi = (phi + phi.T) / 2
    return to_special(polar_unitary(phi))


def twist_witness(
    cfg: Configuration,
    tol: float = 1e-8,
    kernel_rtol: float = 1e-8,
    seed: int = 0,
    attempts: int = 32,
) -> np.ndarray:
    """Find a symmetric special unitary ``phi`` with ``beta(cfg)_j phi = phi c_j``.

    The intertwiner equations and the symmetry condition ``phi = phi^T``
    are stacked into one homogeneous linear system. Its numerical kernel
    (singular values below ``kernel_rtol`` times the largest) is searched:
    the identity first, then each kernel basis vector, then seeded random
    combinations. Each candidate is symmetrized, projected to the nearest
    unitary, normalized to determinant 1 and verified.

    Parameters
    ----------
    cfg : Configuration
        Genus-0 configuration
    tol : float, default 1e-8
        Acceptance threshold for symmetry, unitarity and the intertwiner residual
    kernel_rtol : float, default 1e-8
        Relative singular-value threshold for the kernel
    seed : int, default 0
        Seed for random kernel combinations
    attempts : int, default 32
        Number of random combinations to try

    Returns
    -------
    ndarray
        The first verified witness

    Raises
    ------
    NoWitnessError
        If no candidate passes at ``tol``
    GenusUnsupportedError
        If ``cfg.genus >= 1``
    """
    log_function_call("twist_witness", n=cfg.n, l=cfg.l, tol=tol)
    if cfg.genus != 0:
        raise GenusUnsupportedError("Twist witnesses are only defined in genus 0", genus=cfg.genus)

    n = cfg.n
    betas = beta_punctures(cfg.punctures)
    identity = np.eye(n, dtype=complex)
    if _intertwiner_residual(betas, cfg.punctures, identity) <= tol:
        return identity

    eye = np.eye(n)
    blocks = [np.kron(b, eye) - np.kron(eye, c.T) for b, c in zip(betas, cfg.punctures, strict=True)]
    blocks.append(_transpose_permutation(n) - np.eye(n * n))
    system = np.vstack(blocks)

    _, singular, vh = np.linalg.svd(system, full_matrices=False)
    threshold = kernel_rtol * singular[0]
    rank = int(np.sum(singular > threshold))
    kernel = np.conj(vh[rank:])
    logger.debug(f"twist_witness: kernel dimension {kernel.shape[0]} (smallest singular value {singular[-1]:.3e})")

    if kernel.shape[0] == 0:
        raise NoWitnessError("Intertwiner system has a trivial kernel", residual=float(singular[-1]), tol=tol)

    rng = rng_stream(seed, _TWIST_STREAM)
    candidates = list(kernel)
    for _ in range(attempts):
        weights = rng.standard_normal(kernel.shape[0]) + 1j * rng.standard_normal(kernel.shape[0])
        candidates.append(weights @ kernel)

    best = np.inf
    for vector in candidates:
        phi = _candidate(vector, n)
        if phi is None:
            continue
        residual = _intertwiner_residual(betas, cfg.punctures, phi)
        best = min(best, residual)
        symmetric = np.linalg.norm(phi - phi.T) <= tol * n
        if residual <= tol and symmetric and is_special_unitary(phi, tol=tol, det_tol=tol):
            return phi

    raise NoWitnessError("No symmetric unitary element in the intertwiner kernel", residual=float(best), tol=tol)


def _chain_from_fixed(punctures: tuple[np.ndarray, ...], tol: float, reconstruction: float) -> list[np.ndarray]:
    from ..solver.transfer import transfer_to_symmetric

    factors = transfer_to_symmetric(list(punctures), tol=tol, reconstruction=reconstruction)
    n = punctures[0].shape[0]
    chain: list[np.ndarray] = [np.empty(0)] * len(factors)
    tail = np.eye(n, dtype=complex)
    for j in range(len(factors) - 1, -1, -1):
        tail = factors[j] @ tail
        chain[j] = tail.T @ tail
    return chain


def chain_residual(punctures: tuple[np.ndarray, ...] | list[np.ndarray], chain: list[np.ndarray]) -> float:
    """``max_j |c_j - w_j w_{j+1}^{-1}|_F`` with cyclic indexing."""
    l = len(chain)
    return max(
        float(np.linalg.norm(punctures[j] - chain[j] @ dagger(chain[(j + 1) % l]))) for j in range(l)
    )


def decompose_witness(
    cfg: Configuration,
    tol: float = 1e-8,
    seed: int = 0,
    kernel_rtol: float = 1e-8,
    reconstruction: float = 1e-9,
) -> list[np.ndarray]:
    """Symmetric special unitaries ``w_1, ..., w_l`` with ``c_j = w_j w_{j+1}^{-1}``.

    Fixed points of the involution are decomposed directly through the
    symmetric transfer: with factors ``A_j`` and ``B_j = A_j ... A_l`` the
    chain is ``w_j = B_j^T B_j``. Other configurations are first moved to a
    fixed point by the square root of a twist witness.

    Parameters
    ----------
    cfg : Configuration
        Genus-0 configuration in the identity fiber
    tol : float, default 1e-8
        Fiber, fixed-point and chain acceptance threshold
    seed : int, default 0
        Seed for the twist witness search
    kernel_rtol : float, default 1e-8
        Relative singular-value threshold of the intertwiner kernel
    reconstruction : float, default 1e-9
        Per-dimension Takagi reconstruction bound of every square root

    Raises
    ------
    NotInFiberError
        If ``|moment(cfg) - I| > tol``
    NoWitnessError
        If no twist witness exists or the chain fails verification
    """
    log_function_call("decompose_witness", n=cfg.n, l=cfg.l, tol=tol)
    if cfg.genus != 0:
        raise GenusUnsupportedError("Decomposition is only defined in genus 0", genus=cfg.genus)

    distance = fiber_distance(cfg)
    if distance > tol:
        raise NotInFiberError("Momentum value is not the identity", distance=distance, tol=tol)

    punctures = cfg.punctures
    if beta_residual_of(punctures) <= tol:
        chain = _chain_from_fixed(punctures, tol, reconstruction)
    else:
        phi = twist_witness(cfg, tol=tol, kernel_rtol=kernel_rtol, seed=seed)
        root = sqrt_symmetric(phi, tol=tol, reconstruction=reconstruction)
        root_inv = dagger(root)
        moved = tuple(root @ c @ root_inv for c in punctures)
        chain = [root_inv @ w @ root_inv for w in _chain_from_fixed(moved, tol, reconstruction)]

    residual = chain_residual(punctures, chain)
    if residual > tol:
        raise NoWitnessError("Reconstructed chain misses the configuration", residual=residual, tol=tol)
    logger.info(f"Decomposed configuration with l={cfg.l}, chain residual {residual:.3e}")
    return chain
