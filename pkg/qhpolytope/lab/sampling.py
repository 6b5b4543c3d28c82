"""Sampling momentum polytopes in alcove coordinates.

Full clouds push Haar measure on ``(SU(n) x SU(n))^g x C_1 x ... x C_l``
through the momentum map and the alcove projection. Real clouds collect
the projections of fixed points found by the symmetric fiber solver.
Every chunk and every target owns a named random stream, so results do
not depend on the job count.
"""

from __future__ import annotations

import time
from dataclasses import replace

import numpy as np

from .._parallel import run_ordered
from ..alcove.types import AlcovePoint
from ..exceptions import GenusUnsupportedError, ValidationError
from ..logger import get_logger, log_function_call, log_performance_metric
from ..qham.moment import moment, moment_of
from ..qham.types import SurfaceGroupData
from ..solver.fiber import solve_fiber_symmetric
from ..solver.types import SolveOptions
from ..types import CloudKind
from ..unitary.sampling import haar_su, rng_stream, sample_class_many
from ..unitary.spectra import ConjClassSpec, spectra_to_alcove, spectrum_to_alcove
from .types import AlcoveCloud, IntervalResult

logger = get_logger("lab.sampling")

# Stream keys, one family per consumer.
_FULL_STREAM = 101
_REAL_STREAM = 102
_SU2_STREAM = 103


def _chunks(total: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(start, min(chunk_size, total - start)) for start in range(0, total, chunk_size)]


def _sample_chunk(data: SurfaceGroupData, seed: int, index: int, size: int, tol: float, guard: float):
    rng = rng_stream(seed, _FULL_STREAM, index)
    handles = [haar_su(data.n, rng, size) for _ in range(2 * data.genus)]
    punctures = [sample_class_many(spec, rng, size) for spec in data.classes]
    return spectra_to_alcove(moment_of(handles, punctures, data.n), tol=tol, guard=guard)


def sample_polytope(
    data: SurfaceGroupData,
    samples: int,
    seed: int = 0,
    chunk_size: int = 4096,
    jobs: int = 1,
    tol: float = 1e-8,
    guard: float = 1e-12,
) -> AlcoveCloud:
    """Empirical image of the momentum map in the alcove.

    Parameters
    ----------
    data : SurfaceGroupData
        Genus and puncture classes
    samples : int
        Number of configurations to draw
    seed : int, default 0
        Root seed; chunk ``k`` uses the stream ``(seed, 101, k)``
    chunk_size : int, default 4096
        Configurations per vectorized batch
    jobs : int, default 1
        Chunks processed concurrently
    tol : float, default 1e-8
        Integral phase-sum tolerance of the projection
    guard : float, default 1e-12
        Branch-cut guard band of the projection

    Returns
    -------
    AlcoveCloud
        Kind ``FULL``; rows with non-integral phase sums are dropped and counted
    """
    if samples < 1:
        raise ValidationError("samples must be at least 1", field="samples", value=samples)
    if chunk_size < 1:
        raise ValidationError("chunk_size must be at least 1", field="chunk_size", value=chunk_size)
    log_function_call("sample_polytope", n=data.n, genus=data.genus, l=data.l, samples=samples, seed=seed)

    start = time.perf_counter()
    chunks = _chunks(samples, chunk_size)
    results = run_ordered(
        lambda item: _sample_chunk(data, seed, item[0], item[1][1], tol, guard), list(enumerate(chunks)), jobs=jobs
    )
    points = np.concatenate([p[ok] for p, ok in results]) if results else np.empty((0, data.n))
    rejected = samples - len(points)
    if rejected:
        logger.warning(f"sample_polytope: rejected {rejected} of {samples} samples with non-integral phase sums")

    log_performance_metric("sample_polytope", time.perf_counter() - start, samples=samples, chunks=len(chunks))
    return AlcoveCloud(data, CloudKind.FULL, points, seed=seed, requested=samples, rejected=rejected)


def sample_real_polytope(
    data: SurfaceGroupData,
    samples: int,
    seed: int = 0,
    opts: SolveOptions | None = None,
    full: AlcoveCloud | None = None,
) -> AlcoveCloud:
    """Alcove projections of momentum values of fixed points of the involution.

    Draws ``samples`` targets from a Full cloud (sampled with the same seed
    when ``full`` is not given), runs the symmetric fiber solver on each
    and records the projection of every converged witness's momentum.
    Non-converged targets count as rejections.

    Raises
    ------
    GenusUnsupportedError
        If ``data.genus >= 1``
    """
    if data.genus != 0:
        raise GenusUnsupportedError("Real clouds need genus 0", genus=data.genus)
    if samples < 1:
        raise ValidationError("samples must be at least 1", field="samples", value=samples)
    opts = opts or SolveOptions(seed=seed)
    log_function_call("sample_real_polytope", n=data.n, l=data.l, samples=samples, seed=seed)

    start = time.perf_counter()
    if full is None:
        full = sample_polytope(data, samples, seed=seed)
    if full.size == 0:
        raise ValidationError("Full cloud is empty", field="full", value=0, invariant="cloud.nonempty")

    rng = rng_stream(seed, _REAL_STREAM)
    picks = rng.choice(full.size, size=samples, replace=full.size < samples)
    targets = [AlcovePoint(tuple(full.points[k]), tol=1e-8) for k in picks]

    def solve(index: int) -> np.ndarray | None:
        target_opts = replace(opts, seed=int(rng_stream(seed, _REAL_STREAM, index).integers(2**31)), jobs=1)
        report = solve_fiber_symmetric(data, targets[index], target_opts)
        if not report.converged:
            return None
        return spectrum_to_alcove(moment(report.witness)).array

    found = run_ordered(solve, range(samples), jobs=opts.jobs)
    points = np.array([p for p in found if p is not None]).reshape(-1, data.n)
    rejected = samples - len(points)
    if rejected:
        logger.warning(f"sample_real_polytope: {rejected} of {samples} targets did not converge")

    log_performance_metric("sample_real_polytope", time.perf_counter() - start, samples=samples, rejected=rejected)
    return AlcoveCloud(data, CloudKind.REAL, points, seed=seed, requested=samples, rejected=rejected)


def su2_interval_bounds(s1: float, s2: float) -> tuple[float, float]:
    """Closed-form range ``[|s1 - s2|, min(s1 + s2, 1 - s1 - s2)]`` for SU(2) products."""
    return abs(s1 - s2), min(s1 + s2, 1 - s1 - s2)


def su2_interval(s1: float, s2: float, samples: int, seed: int = 0, chunk_size: int = 65536) -> IntervalResult:
    """Brute-force range of the alcove coordinate of ``c_1 c_2`` in SU(2).

    ``c_1`` and ``c_2`` are drawn uniformly from the classes with alcove
    points ``(s1, -s1)`` and ``(s2, -s2)``.
    """
    for name, s in (("s1", s1), ("s2", s2)):
        if not 0 <= s <= 0.5:
            raise ValidationError(f"{name} must lie in [0, 1/2]", field=name, value=s)
    if samples < 1:
        raise ValidationError("samples must be at least 1", field="samples", value=samples)

    first = ConjClassSpec.from_coords((s1, -s1))
    second = ConjClassSpec.from_coords((s2, -s2))
    lo, hi = np.inf, -np.inf
    for index, (_, size) in enumerate(_chunks(samples, chunk_size)):
        rng = rng_stream(seed, _SU2_STREAM, index)
        products = sample_class_many(first, rng, size) @ sample_class_many(second, rng, size)
        points, ok = spectra_to_alcove(products)
        coordinate = points[ok, 0]
        if coordinate.size:
            lo, hi = min(lo, float(coordinate.min())), max(hi, float(coordinate.max()))

    return IntervalResult(lo=float(np.clip(lo, 0, 0.5)), hi=float(np.clip(hi, 0, 0.5)), samples=samples)
