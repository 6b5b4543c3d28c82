"""Numerical kernel for special unitary matrices."""

from .core import (
    centralizer_dim,
    commutator,
    dagger,
    is_special_unitary,
    is_symmetric_unitary,
    polar_unitary,
    require_special_unitary,
    reunitarize,
    tau,
    tau_minus,
    to_special,
)
from .sampling import haar_su, haar_unitary, rng_stream, sample_class, sample_class_many
from .spectra import ConjClassSpec, alcove_exp, eigenphases, spectra_to_alcove, spectrum_to_alcove
from .takagi import sqrt_symmetric, takagi

__all__ = [
    # Involutions and products
    "tau",
    "tau_minus",
    "dagger",
    "commutator",
    # Validity
    "is_special_unitary",
    "is_symmetric_unitary",
    "require_special_unitary",
    "polar_unitary",
    "reunitarize",
    "to_special",
    "centralizer_dim",
    # Spectra
    "ConjClassSpec",
    "alcove_exp",
    "eigenphases",
    "spectrum_to_alcove",
    "spectra_to_alcove",
    # Sampling
    "rng_stream",
    "haar_unitary",
    "haar_su",
    "sample_class",
    "sample_class_many",
    # Takagi
    "takagi",
    "sqrt_symmetric",
]
