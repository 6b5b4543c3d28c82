"""Seeded Haar sampling on SU(n) and on conjugacy classes.

Every random draw comes from an explicit ``numpy.random.Generator``; named
streams ``rng_stream(seed, *keys)`` give independent generators for
parallel work without shared state.
"""

from __future__ import annotations

import numpy as np

from .core import dagger, to_special
from .spectra import ConjClassSpec


def rng_stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for the stream ``(seed, *keys)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(k) for k in keys)]))


def haar_unitary(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-distributed U(n) matrices.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved
    into ``Q`` so the factorization is unique and the law is Haar.
    """
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phases = d / np.abs(d)
    return q * phases[..., None, :]


def haar_su(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-distributed SU(n) matrices.

    Dividing by any n-th root of the determinant commutes with left
    translation by SU(n), so the result is Haar on SU(n).
    """
    return to_special(haar_unitary(n, rng, size))


def sample_class(spec: ConjClassSpec, seed: int = 0, rng: np.random.Generator | None = None) -> np.ndarray:
    """Uniform element ``k exp(lam) k^dag`` of a conjugacy class.

    Parameters
    ----------
    spec : ConjClassSpec
        Class to sample
    seed : int, default 0
        Seed used when ``rng`` is not given
    rng : Generator, optional
        Explicit stream; takes precedence over ``seed``
    """
    rng = rng if rng is not None else rng_stream(seed)
    k = haar_su(spec.n, rng)
    return k @ spec.representative() @ dagger(k)


def sample_class_many(spec: ConjClassSpec, rng: np.random.Generator, size: int) -> np.ndarray:
    """Stack of ``size`` independent class samples, shape ``(size, n, n)``."""
    k = haar_su(spec.n, rng, size)
    return k @ spec.representative()[None, :, :] @ dagger(k)
