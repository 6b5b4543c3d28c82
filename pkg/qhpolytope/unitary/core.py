"""Elementary operations on special unitary matrices.

Functions accept single matrices or stacks of shape ``(..., n, n)`` where
that makes sense.
"""

from __future__ import annotations

import numpy as np

from ..exceptions import ValidationError

# Default validity tolerances, scaled by n where noted.
UNITARY_TOL = 1e-10
DET_TOL = 1e-10


def dagger(u: np.ndarray) -> np.ndarray:
    """Conjugate transpose of the trailing two axes."""
    return np.conj(np.swapaxes(u, -1, -2))


def tau(u: np.ndarray) -> np.ndarray:
    """Entrywise complex conjugation, an involutive automorphism of SU(n)."""
    return np.conj(u)


def tau_minus(u: np.ndarray) -> np.ndarray:
    """``u -> tau(u^{-1})``, which is the transpose on unitaries."""
    return np.swapaxes(u, -1, -2)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Group commutator ``a b a^{-1} b^{-1}``."""
    return a @ b @ dagger(a) @ dagger(b)


def is_special_unitary(u: np.ndarray, tol: float = UNITARY_TOL, det_tol: float = DET_TOL) -> bool:
    """Check ``|U^dag U - I|_F <= tol * n`` and ``|det U - 1| <= det_tol``."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    n = u.shape[0]
    unitary_err = np.linalg.norm(dagger(u) @ u - np.eye(n))
    return bool(unitary_err <= tol * n and abs(np.linalg.det(u) - 1) <= det_tol)


def is_symmetric_unitary(u: np.ndarray, tol: float = UNITARY_TOL, det_tol: float = DET_TOL) -> bool:
    """Special unitary and fixed by ``tau_minus`` within ``tol * n``."""
    u = np.asarray(u)
    return is_special_unitary(u, tol, det_tol) and bool(np.linalg.norm(u - u.T) <= tol * u.shape[0])


def require_special_unitary(u: np.ndarray, name: str = "matrix", tol: float = 1e-8) -> np.ndarray:
    """Return ``u`` as a complex array or raise ``ValidationError``."""
    arr = np.asarray(u, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square", field=name, value=arr.shape, invariant="unitary.shape")
    if not is_special_unitary(arr, tol=tol, det_tol=tol):
        n = arr.shape[0]
        raise ValidationError(
            f"{name} is not special unitary within {tol}",
            field=name,
            value={
                "unitarity": float(np.linalg.norm(dagger(arr) @ arr - np.eye(n))),
                "det": complex(np.linalg.det(arr)),
            },
            invariant="unitary.special",
        )
    return arr


def polar_unitary(m: np.ndarray) -> np.ndarray:
    """Nearest unitary matrix in Frobenius norm (unitary polar factor)."""
    w, _, vh = np.linalg.svd(m)
    return w @ vh


def to_special(u: np.ndarray) -> np.ndarray:
    """Divide by the principal n-th root of the determinant."""
    n = u.shape[-1]
    det = np.linalg.det(u)
    return u / np.asarray(det ** (1.0 / n))[..., None, None]


def reunitarize(u: np.ndarray) -> np.ndarray:
    """Project a drifted special unitary back onto SU(n)."""
    return to_special(polar_unitary(u))


def centralizer_dim(u: np.ndarray, threshold: float = 1e-8) -> int:
    """Real dimension of the centralizer of ``u`` in SU(n).

    Counts singular values of ``Y -> uY - Yu`` on complex n x n matrices
    below ``threshold``; that complex kernel dimension equals the real
    centralizer dimension in u(n), and the trace direction is removed.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    eye = np.eye(n)
    # Row-major vec: vec(uY) = (u x I) vec Y, vec(Yu) = (I x u^T) vec Y.
    operator = np.kron(u, eye) - np.kron(eye, u.T)
    singular = np.linalg.svd(operator, compute_uv=False)
    return int(np.sum(singular <= threshold)) - 1
