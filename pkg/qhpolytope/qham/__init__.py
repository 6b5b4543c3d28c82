"""Configurations, momentum map and the involution beta."""

from .decomposition import chain_residual, decompose_witness, twist_witness
from .moment import (
    beta,
    beta_punctures,
    beta_residual,
    conjugate_configuration,
    fiber_distance,
    moment,
    moment_of,
)
from .types import Configuration, SurfaceGroupData

__all__ = [
    "SurfaceGroupData",
    "Configuration",
    "moment",
    "moment_of",
    "fiber_distance",
    "beta",
    "beta_punctures",
    "beta_residual",
    "conjugate_configuration",
    "twist_witness",
    "decompose_witness",
    "chain_residual",
]
