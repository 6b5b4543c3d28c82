"""Riemannian multi-restart solvers for momentum fibers.

Punctures are parametrized as ``c_j = k_j exp(lambda_j) k_j^dag`` so they
never leave their class; handles are free unitaries. Each restart runs
pymanopt's conjugate gradient with Armijo backtracking on the product of
unitary groups; restarts are merged here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from pymanopt.optimizers import ConjugateGradient
from pymanopt.optimizers.line_search import BackTrackingLineSearcher

from .._parallel import run_ordered
from ..alcove.types import AlcovePoint
from ..exceptions import NoWitnessError, ValidationError
from ..logger import get_logger, log_function_call, log_performance_metric
from ..qham.decomposition import decompose_witness
from ..qham.types import SurfaceGroupData
from ..types import SolveStatus
from ..unitary.sampling import haar_su, rng_stream
from .objective import FiberProblem
from .transfer import transfer_to_symmetric
from .types import FeasibilityReport, SolveOptions

logger = get_logger("solver.fiber")

# Cost evaluations allowed per iteration, line search included.
_EVALS_PER_ITER = 30


@dataclass
class _RestartResult:
    index: int
    converged: bool
    terms: dict[str, float]
    iterations: int
    point: list[np.ndarray]
    history: list[float] = field(default_factory=list)

    @property
    def objective(self) -> float:
        return float(sum(self.terms.values()))


def _is_converged(terms: dict[str, float], tol: float) -> bool:
    moment_ok = terms["moment"] < tol**2
    beta_total = sum(v for k, v in terms.items() if k != "moment")
    return moment_ok and beta_total < tol**2


def _optimizer(opts: SolveOptions) -> ConjugateGradient:
    searcher = BackTrackingLineSearcher(
        contraction_factor=0.5, sufficient_decrease=opts.armijo, initial_step_size=opts.step_init
    )
    return ConjugateGradient(
        line_searcher=searcher,
        max_iterations=opts.max_iters,
        min_gradient_norm=opts.grad_tol,
        min_step_size=opts.step_floor,
        max_cost_evaluations=_EVALS_PER_ITER * opts.max_iters,
        max_time=np.inf,
        verbosity=0,
        log_verbosity=2 if opts.record_history else 0,
    )


def _run_restart(fiber: FiberProblem, opts: SolveOptions, index: int) -> _RestartResult:
    data = fiber.data
    rng = rng_stream(opts.seed, index)
    handles = [haar_su(data.n, rng) for _ in range(2 * data.genus)]
    frames = [haar_su(data.n, rng) for _ in range(data.l)]

    result = _optimizer(opts).run(fiber.problem, initial_point=handles + frames)
    point = list(result.point)
    terms = fiber.terms(point)
    history: list[float] = []
    if opts.record_history and result.log.get("iterations"):
        history = [float(c) for c in result.log["iterations"]["cost"]]
    logger.debug(f"restart {index}: {result.iterations} iterations, stopped by {result.stopping_criterion}")
    return _RestartResult(index, _is_converged(terms, opts.residual_tol), terms, result.iterations, point, history)


def _solve(data: SurfaceGroupData, target: AlcovePoint, opts: SolveOptions, symmetric: bool) -> FeasibilityReport:
    if target.n != data.n:
        raise ValidationError(
            f"Target has size {target.n}, data has {data.n}", field="target", value=target.to_json()
        )
    fiber = FiberProblem(data, target, symmetric)
    start = time.perf_counter()

    chosen: _RestartResult | None = None
    best: _RestartResult | None = None
    wave = max(1, opts.jobs)

    for first in range(0, opts.restarts, wave):
        indices = range(first, min(first + wave, opts.restarts))
        results = run_ordered(lambda r: _run_restart(fiber, opts, r), indices, jobs=opts.jobs)
        for result in results:
            if result.converged and chosen is None:
                chosen = result
            if best is None or result.objective < best.objective:
                best = result
        if chosen is not None:
            break

    assert best is not None
    duration = time.perf_counter() - start

    if chosen is not None:
        residual = float(np.sqrt(chosen.terms["moment"]))
        beta_res = float(np.sqrt(sum(v for k, v in chosen.terms.items() if k != "moment"))) if symmetric else None
        report = FeasibilityReport(
            status=SolveStatus.CONVERGED,
            residual=residual,
            iterations=chosen.iterations,
            restarts_used=chosen.index + 1,
            target=target,
            residual_tol=opts.residual_tol,
            witness=fiber.configuration(chosen.point),
            beta_residual=beta_res,
            history=chosen.history,
        )
    else:
        beta_res = float(np.sqrt(sum(v for k, v in best.terms.items() if k != "moment"))) if symmetric else None
        report = FeasibilityReport(
            status=SolveStatus.NON_CONVERGENT,
            residual=float(np.sqrt(best.terms["moment"])),
            iterations=best.iterations,
            restarts_used=opts.restarts,
            target=target,
            residual_tol=opts.residual_tol,
            beta_residual=beta_res,
            history=best.history,
        )

    log_performance_metric(
        "solve_fiber_symmetric" if symmetric else "solve_fiber",
        duration,
        status=report.status.value,
        restarts=report.restarts_used,
    )
    logger.info(f"Fiber solve at {target.to_json()}: {report.status.value}, residual {report.residual:.3e}")
    return report


def solve_fiber(data: SurfaceGroupData, target: AlcovePoint, opts: SolveOptions | None = None) -> FeasibilityReport:
    """Search for a configuration with ``moment(cfg) = exp(target)``.

    Minimizes ``|moment(cfg) - exp(target)|_F^2`` from ``opts.restarts``
    Haar-random starting points. The lowest-index converged restart wins;
    if none converges the report carries the best residual and status
    ``NON_CONVERGENT``, which is not evidence of infeasibility.

    Parameters
    ----------
    data : SurfaceGroupData
        Rank, genus and puncture classes
    target : AlcovePoint
        Alcove point whose exponential is the fiber value
    opts : SolveOptions, optional
        Budgets and thresholds

    Returns
    -------
    FeasibilityReport
    """
    opts = opts or SolveOptions()
    log_function_call("solve_fiber", n=data.n, genus=data.genus, l=data.l, target=target.to_json())
    return _solve(data, target, opts, symmetric=False)


def solve_fiber_symmetric(
    data: SurfaceGroupData, target: AlcovePoint, opts: SolveOptions | None = None
) -> FeasibilityReport:
    """Search for a fixed point of the involution inside a fiber.

    Adds the penalty ``sum_j |beta(cfg)_j - c_j|_F^2`` with weight 1 to the
    fiber objective. Converged iff both parts are below ``residual_tol**2``.

    Raises
    ------
    GenusUnsupportedError
        If ``data.genus >= 1``
    """
    opts = opts or SolveOptions()
    log_function_call("solve_fiber_symmetric", n=data.n, l=data.l, target=target.to_json())
    return _solve(data, target, opts, symmetric=True)


def decomposable_representation(
    data: SurfaceGroupData, opts: SolveOptions | None = None, tol: float = 1e-6
) -> tuple[FeasibilityReport, list[np.ndarray]]:
    """Construct a decomposable genus-0 representation with the given classes.

    Solves for a fixed point of the involution in the identity fiber and
    splits it into a chain of symmetric unitaries.

    Returns
    -------
    report : FeasibilityReport
        The symmetric solve
    chain : list of ndarray
        ``w_1, ..., w_l`` with ``c_j = w_j w_{j+1}^{-1}``

    Raises
    ------
    NoWitnessError
        If the symmetric solve does not converge
    """
    report = solve_fiber_symmetric(data, AlcovePoint.identity(data.n), opts)
    if not report.converged:
        raise NoWitnessError("No fixed point found in the identity fiber", residual=report.residual, tol=tol)
    return report, decompose_witness(report.witness, tol=tol)


def symmetric_factorization(
    data: SurfaceGroupData, opts: SolveOptions | None = None, tol: float = 1e-6
) -> tuple[FeasibilityReport, list[np.ndarray]]:
    """Special unitaries ``A_1 ... A_l = I`` with ``A_j^T A_j`` in class ``j``.

    Raises
    ------
    NoWitnessError
        If the symmetric solve does not converge
    """
    report = solve_fiber_symmetric(data, AlcovePoint.identity(data.n), opts)
    if not report.converged:
        raise NoWitnessError("No fixed point found in the identity fiber", residual=report.residual, tol=tol)
    return report, transfer_to_symmetric(list(report.witness.punctures), tol=tol)
