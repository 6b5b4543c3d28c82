"""Convexity, real-equality and dominant-cell checks on alcove clouds."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import replace

import numpy as np
import scipy.spatial

from .._parallel import run_ordered
from ..alcove.cells import orbit_dim
from ..alcove.types import AlcovePoint
from ..exceptions import AmbiguousCellError, DataMismatchError, GenusUnsupportedError, ValidationError
from ..logger import get_logger, log_function_call, log_performance_metric
from ..solver.fiber import solve_fiber, solve_fiber_symmetric
from ..solver.types import SolveOptions
from ..types import CloudKind
from ..unitary.sampling import rng_stream
from .types import AlcoveCloud, ConvexityReport, DominantCellResult, RealEqualityReport

logger = get_logger("lab.verify")

_PAIR_STREAM = 201
_TARGET_STREAM = 202


def _chart(points: np.ndarray) -> np.ndarray:
    """Drop the last coordinate; it is minus the sum of the others."""
    return np.atleast_2d(points)[:, :-1]


def _unchart(coords: np.ndarray) -> np.ndarray:
    coords = np.atleast_2d(coords)
    return np.hstack([coords, -coords.sum(axis=1, keepdims=True)])


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """One-sided Hausdorff distances ``(d(a -> b), d(b -> a))`` in alcove coordinates."""
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    if len(a) == 0 or len(b) == 0:
        raise ValidationError("Hausdorff distance needs non-empty clouds", field="points", value=[len(a), len(b)])
    forward, _ = scipy.spatial.cKDTree(b).query(a)
    backward, _ = scipy.spatial.cKDTree(a).query(b)
    return float(forward.max()), float(backward.max())


def hull_contains(cloud: np.ndarray, points: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Membership of ``points`` in the convex hull of ``cloud`` within ``tol``.

    Works in the chart that drops the last alcove coordinate. A cloud that
    does not span the chart (for instance a single point) falls back to
    nearest-neighbour distance.
    """
    hull_pts, queries = _chart(cloud), _chart(points)
    if hull_pts.shape[1] == 1:
        lo, hi = hull_pts.min(), hull_pts.max()
        return (queries[:, 0] >= lo - tol) & (queries[:, 0] <= hi + tol)

    try:
        hull = scipy.spatial.ConvexHull(hull_pts)
    except scipy.spatial.QhullError:
        logger.debug("hull_contains: degenerate cloud, using nearest-neighbour distance")
        distance, _ = scipy.spatial.cKDTree(hull_pts).query(queries)
        return distance <= tol
    # Facet equations are normalized: A x + b <= 0 inside.
    offsets = queries @ hull.equations[:, :-1].T + hull.equations[:, -1]
    return np.all(offsets <= tol, axis=1)


def grid_targets(cloud: np.ndarray, grid: int, inset: float = 0.05) -> np.ndarray:
    """Targets spread over the relative interior of a cloud's hull.

    In one dimension ``grid`` evenly spaced points between the inset
    endpoints. Otherwise a lattice with ``grid`` points per axis over the
    bounding box, kept where it lies inside the hull shrunk by ``inset``
    about its centroid.
    """
    if grid < 1:
        raise ValidationError("grid must be at least 1", field="grid", value=grid)
    if not 0 <= inset < 0.5:
        raise ValidationError("inset must lie in [0, 1/2)", field="inset", value=inset)
    coords = _chart(cloud)
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    if np.all(hi - lo <= 1e-12):
        return _unchart(lo)

    if coords.shape[1] == 1:
        width = hi[0] - lo[0]
        line = np.linspace(lo[0] + inset * width, hi[0] - inset * width, grid)
        return _unchart(line[:, None])

    axes = [np.linspace(a, b, grid) for a, b in zip(lo, hi, strict=True)]
    lattice = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, coords.shape[1])
    centroid = coords.mean(axis=0)
    stretched = centroid + (lattice - centroid) / (1 - inset)
    inside = hull_contains(cloud, _unchart(stretched), tol=0.0)
    return _unchart(lattice[inside])


def _target_seed(seed: int, index: int) -> int:
    return int(rng_stream(seed, _TARGET_STREAM, index).integers(2**31))


def verify_convexity(
    cloud: AlcoveCloud, pairs: int = 200, opts: SolveOptions | None = None, seed: int = 0
) -> ConvexityReport:
    """Midpoint feasibility test of a Full cloud.

    Draws ``pairs`` random pairs of cloud points and runs ``solve_fiber``
    on each midpoint. The fraction of converged solves is a lower estimate
    of the fraction of feasible midpoints.

    Parameters
    ----------
    cloud : AlcoveCloud
        Full cloud
    pairs : int, default 200
        Number of midpoints to test
    opts : SolveOptions, optional
        Solver settings; ``opts.jobs`` bounds concurrent midpoints
    seed : int, default 0
        Seed of the pair draw and the per-midpoint solver streams

    Returns
    -------
    ConvexityReport
    """
    if cloud.kind is not CloudKind.FULL:
        raise ValidationError("Convexity is checked on Full clouds", field="kind", value=cloud.kind.value)
    if cloud.size == 0:
        raise ValidationError("Cloud is empty", field="cloud", value=0, invariant="cloud.nonempty")
    if pairs < 1:
        raise ValidationError("pairs must be at least 1", field="pairs", value=pairs)
    opts = opts or SolveOptions(seed=seed)
    log_function_call("verify_convexity", size=cloud.size, pairs=pairs, seed=seed)

    start = time.perf_counter()
    rng = rng_stream(seed, _PAIR_STREAM)
    left = rng.integers(cloud.size, size=pairs)
    right = rng.integers(cloud.size, size=pairs)
    midpoints = (cloud.points[left] + cloud.points[right]) / 2

    def solve(index: int) -> dict:
        target = AlcovePoint(tuple(midpoints[index]), tol=1e-8)
        report = solve_fiber(cloud.data, target, replace(opts, seed=_target_seed(seed, index), jobs=1))
        return {"target": target.to_json(), "status": report.status.value, "residual": report.residual}

    outcomes = run_ordered(solve, range(pairs), jobs=opts.jobs)
    feasible = sum(1 for o in outcomes if o["status"] == "Converged")

    log_performance_metric("verify_convexity", time.perf_counter() - start, pairs=pairs, feasible=feasible)
    logger.info(f"verify_convexity: {feasible}/{pairs} midpoints converged")
    return ConvexityReport(pairs=pairs, feasible=feasible, residual_tol=opts.residual_tol, midpoints=outcomes)


def verify_real_equality(
    full: AlcoveCloud,
    real_cloud: AlcoveCloud,
    grid: int = 21,
    opts: SolveOptions | None = None,
    inset: float = 0.05,
    seed: int = 0,
    containment_tol: float = 1e-6,
) -> RealEqualityReport:
    """Compare a Real cloud with a Full cloud and solve on a grid inside the Full hull.

    Reports both one-sided Hausdorff distances, the fraction of Real points
    inside the Full hull and the number of inset grid targets on which the
    symmetric fiber solver converges.

    Raises
    ------
    DataMismatchError
        If the clouds were sampled from different class data
    GenusUnsupportedError
        If the data has positive genus
    """
    if not full.data.matches(real_cloud.data):
        raise DataMismatchError(
            "Clouds come from different class data",
            details={"full": full.data.to_json(), "real": real_cloud.data.to_json()},
        )
    if full.data.genus != 0:
        raise GenusUnsupportedError("Real equality is checked in genus 0", genus=full.data.genus)
    if full.size == 0 or real_cloud.size == 0:
        raise ValidationError(
            "Both clouds must be non-empty",
            field="cloud",
            value=[full.size, real_cloud.size],
            invariant="cloud.nonempty",
        )
    opts = opts or SolveOptions(seed=seed)
    log_function_call("verify_real_equality", full=full.size, real=real_cloud.size, grid=grid)

    start = time.perf_counter()
    to_full, to_real = hausdorff_distance(real_cloud.points, full.points)
    inside = hull_contains(full.points, real_cloud.points, tol=containment_tol)

    targets = grid_targets(full.points, grid, inset)

    def solve(index: int) -> dict:
        target = AlcovePoint(tuple(targets[index]), tol=1e-8)
        report = solve_fiber_symmetric(full.data, target, replace(opts, seed=_target_seed(seed, index), jobs=1))
        return {
            "target": target.to_json(),
            "status": report.status.value,
            "residual": report.residual,
            "beta_residual": report.beta_residual,
        }

    outcomes = run_ordered(solve, range(len(targets)), jobs=opts.jobs)
    converged = sum(1 for o in outcomes if o["status"] == "Converged")

    log_performance_metric("verify_real_equality", time.perf_counter() - start, targets=len(targets))
    logger.info(
        f"verify_real_equality: hausdorff {max(to_full, to_real):.3e}, grid {converged}/{len(targets)} converged"
    )
    return RealEqualityReport(
        hausdorff_real_to_full=to_full,
        hausdorff_full_to_real=to_real,
        grid_targets=len(targets),
        grid_converged=converged,
        real_in_full_fraction=float(np.mean(inside)),
        residual_tol=opts.residual_tol,
        targets=outcomes,
    )


def dominant_cell(cloud: AlcoveCloud, tol: float = 1e-8) -> DominantCellResult:
    """The cell of maximal orbit dimension met by the cloud.

    Raises
    ------
    AmbiguousCellError
        If two different cells share the maximal orbit dimension
    """
    if cloud.size == 0:
        raise ValidationError("Cloud is empty", field="cloud", value=0, invariant="cloud.nonempty")

    counts = Counter(cloud.signatures(tol))
    dims = {sig: orbit_dim(sig, cloud.n) for sig in counts}
    top = max(dims.values())
    winners = [sig for sig, d in dims.items() if d == top]
    if len(winners) > 1:
        raise AmbiguousCellError(
            f"{len(winners)} cells share the maximal orbit dimension {top}",
            signatures=[sig.to_json() for sig in winners],
            orbit_dim=top,
        )

    signature = winners[0]
    fraction = counts[signature] / cloud.size
    logger.info(f"dominant_cell: orbit dimension {top}, fraction {fraction:.4f}")
    return DominantCellResult(signature=signature, orbit_dim=top, fraction=fraction, tol=tol)
