"""Fiber solvers, objective gradients and the symmetric transfers."""

from .fiber import decomposable_representation, solve_fiber, solve_fiber_symmetric, symmetric_factorization
from .objective import FiberProblem, build_objective, gradient_check, objective_value_and_gradient
from .transfer import transfer_from_symmetric, transfer_to_symmetric
from .types import NON_CERTIFICATE_NOTE, FeasibilityReport, SolveOptions

__all__ = [
    # Types
    "SolveOptions",
    "FeasibilityReport",
    "NON_CERTIFICATE_NOTE",
    # Solvers
    "solve_fiber",
    "solve_fiber_symmetric",
    "decomposable_representation",
    "symmetric_factorization",
    # Objective
    "FiberProblem",
    "build_objective",
    "objective_value_and_gradient",
    "gradient_check",
    # Transfers
    "transfer_from_symmetric",
    "transfer_to_symmetric",
]
