"""Unit tests for the fiber solvers and the gradient of their objectives."""

import numpy as np
import pytest

from qhpolytope.alcove import AlcovePoint
from qhpolytope.exceptions import GenusUnsupportedError, ValidationError
from qhpolytope.qham import SurfaceGroupData, beta_residual, chain_residual, moment
from qhpolytope.solver import (
    NON_CERTIFICATE_NOTE,
    FeasibilityReport,
    FiberProblem,
    SolveOptions,
    build_objective,
    decomposable_representation,
    gradient_check,
    objective_value_and_gradient,
    solve_fiber,
    solve_fiber_symmetric,
    symmetric_factorization,
)
from qhpolytope.types import SolveStatus
from qhpolytope.unitary import commutator, dagger, is_symmetric_unitary, spectrum_to_alcove
from tests.conftest import configuration_of, random_configuration


def _su2_point(s: float) -> AlcovePoint:
    return AlcovePoint((s, -s))


@pytest.mark.unit
class TestSolveOptions:
    """Validation of solver budgets."""

    def test_defaults(self):
        opts = SolveOptions()
        assert (opts.max_iters, opts.restarts, opts.armijo, opts.step_floor) == (2000, 8, 1e-4, 1e-12)

    @pytest.mark.parametrize(
        "overrides",
        [{"restarts": 0}, {"max_iters": -1}, {"residual_tol": 1.0}, {"step_init": 0.0}, {"seed": -1}, {"jobs": 0}],
    )
    def test_invalid_options(self, overrides):
        with pytest.raises(ValidationError):
            SolveOptions(**overrides)


@pytest.mark.unit
class TestFeasibilityReport:
    """Report invariants and serialization."""

    def test_converged_needs_witness(self):
        with pytest.raises(ValidationError) as excinfo:
            FeasibilityReport(SolveStatus.CONVERGED, 0.0, 1, 1, _su2_point(0.1), 1e-8)
        assert excinfo.value.invariant == "report.converged_witness"

    def test_non_convergent_is_not_a_certificate(self):
        report = FeasibilityReport(SolveStatus.NON_CONVERGENT, 0.3, 10, 2, _su2_point(0.1), 1e-8)
        payload = report.to_dict()
        assert payload["status"] == SolveStatus.NON_CONVERGENT.value
        assert payload["certificate"] == NON_CERTIFICATE_NOTE
        assert "witness" not in payload


@pytest.mark.unit
class TestGradient:
    """Analytic gradients against finite differences."""

    def test_stationary_at_exact_solution(self):
        """A diagonal configuration in its own fiber has zero gradient."""
        d1, d2 = AlcovePoint((0.2, -0.2)).exp(), AlcovePoint((0.15, -0.15)).exp()
        cfg = configuration_of([d1, d2])
        target = _su2_point(0.35)
        value, gradients = objective_value_and_gradient(cfg.data, target, cfg)
        assert value < 1e-20
        assert max(np.linalg.norm(g) for g in gradients) < 1e-9
        assert gradient_check(cfg.data, target, cfg, eps=1e-6) < 1e-6

    def test_random_su2(self, su2_data):
        cfg = random_configuration(su2_data, seed=21)
        assert gradient_check(su2_data, _su2_point(0.1), cfg, eps=1e-6) < 1e-5

    def test_random_su4_four_punctures(self):
        rng = np.random.default_rng(3)
        classes = []
        for _ in range(4):
            phases = rng.uniform(0, 1, size=4)
            phases[-1] = -phases[:-1].sum()
            classes.append(spectrum_to_alcove(np.diag(np.exp(2j * np.pi * phases))).x)
        data = SurfaceGroupData.from_classes(classes)
        cfg = random_configuration(data, seed=5)
        assert gradient_check(data, AlcovePoint.identity(4), cfg, eps=1e-6) < 1e-5

    def test_symmetric_objective(self, su3_data):
        cfg = random_configuration(su3_data, seed=6)
        assert gradient_check(su3_data, AlcovePoint.identity(3), cfg, eps=1e-6, symmetric=True) < 1e-5

    def test_genus_one(self):
        """Handles are free unitaries next to the class frames."""
        data = SurfaceGroupData.from_classes([[0.25, 0.0, -0.25]], genus=1)
        cfg = random_configuration(data, seed=9)
        assert gradient_check(data, AlcovePoint((0.1, 0.0, -0.1)), cfg, eps=1e-6) < 1e-5

    def test_frames_reproduce_configuration(self, su3_data):
        cfg = random_configuration(su3_data, seed=8)
        fiber = FiberProblem(su3_data, AlcovePoint.identity(3))
        point = fiber.point_of(cfg)
        for k in point:
            assert np.allclose(k @ dagger(k), np.eye(3), atol=1e-12)
        rebuilt = fiber.configuration(point)
        for ours, theirs in zip(rebuilt.punctures, cfg.punctures):
            assert np.linalg.norm(ours - theirs) < 1e-10

    def test_witness_handles_are_special(self):
        """Optimization runs on U(n); witnesses are normalized into SU(n)."""
        data = SurfaceGroupData.from_classes([[0.25, 0.0, -0.25]], genus=1)
        cfg = random_configuration(data, seed=9)
        fiber = FiberProblem(data, AlcovePoint.identity(3))
        point = fiber.point_of(cfg)
        point[:2] = [np.exp(0.3j) * h for h in point[:2]]
        rebuilt = fiber.configuration(point)
        for h in rebuilt.handles:
            assert np.linalg.det(h) == pytest.approx(1)
        assert np.allclose(commutator(*rebuilt.handles), commutator(*cfg.handles), atol=1e-10)
        assert np.allclose(moment(rebuilt), moment(cfg), atol=1e-10)

    def test_eps_range(self, su2_data):
        cfg = random_configuration(su2_data, seed=1)
        with pytest.raises(ValidationError):
            gradient_check(su2_data, _su2_point(0.1), cfg, eps=1e-2)

    def test_symmetric_objective_needs_genus_zero(self):
        data = SurfaceGroupData(2, 1, ())
        with pytest.raises(GenusUnsupportedError):
            build_objective(data, None, symmetric=True)


@pytest.mark.unit
class TestSolveFiber:
    """Multi-restart descent on momentum fibers."""

    def test_feasible_by_construction(self, su3_data, fast_opts):
        """The label of a random configuration's moment is reachable."""
        target = spectrum_to_alcove(moment(random_configuration(su3_data, seed=31)))
        report = solve_fiber(su3_data, target, fast_opts)
        assert report.converged
        assert report.residual < 1e-8
        assert np.linalg.norm(moment(report.witness) - target.exp()) < 1e-8

    def test_diagonal_target(self, su2_data, fast_opts):
        report = solve_fiber(su2_data, _su2_point(0.35), fast_opts)
        assert report.status is SolveStatus.CONVERGED

    def test_outside_interval_does_not_converge(self, su2_data):
        """0.5 lies outside [0.05, 0.35]."""
        report = solve_fiber(su2_data, _su2_point(0.5), SolveOptions(max_iters=300, restarts=3, seed=1))
        assert report.status is SolveStatus.NON_CONVERGENT
        assert report.witness is None
        assert report.restarts_used == 3
        assert report.residual > 0.1

    def test_monotone_history(self, su2_data):
        opts = SolveOptions(max_iters=200, restarts=1, seed=2, record_history=True)
        report = solve_fiber(su2_data, _su2_point(0.2), opts)
        history = np.array(report.history)
        assert len(history) > 1
        assert np.all(np.diff(history) <= 1e-15)

    def test_independent_of_jobs(self, su2_data):
        """Restart merging does not depend on the worker count."""
        base = dict(max_iters=300, restarts=4, seed=4)
        serial = solve_fiber(su2_data, _su2_point(0.5), SolveOptions(**base, jobs=1))
        parallel = solve_fiber(su2_data, _su2_point(0.5), SolveOptions(**base, jobs=3))
        assert serial.residual == parallel.residual
        assert serial.iterations == parallel.iterations

    def test_target_size_mismatch(self, su2_data):
        with pytest.raises(ValidationError):
            solve_fiber(su2_data, AlcovePoint.identity(3))


@pytest.mark.unit
class TestSolveFiberSymmetric:
    """Fixed points of the involution inside fibers."""

    def test_mirrored_classes_at_identity(self, fast_opts):
        data = SurfaceGroupData.from_classes([[0.2, -0.2], [0.2, -0.2]])
        report = solve_fiber_symmetric(data, AlcovePoint.identity(2), fast_opts)
        assert report.converged
        assert beta_residual(report.witness) < 1e-6
        assert report.beta_residual is not None and report.beta_residual < 1e-8

    def test_interior_target(self, su2_data, fast_opts):
        report = solve_fiber_symmetric(su2_data, _su2_point(0.2), fast_opts)
        assert report.converged
        assert beta_residual(report.witness) < 1e-6

    def test_outside_full_polytope(self, su2_data):
        report = solve_fiber_symmetric(su2_data, _su2_point(0.45), SolveOptions(max_iters=300, restarts=2))
        assert not report.converged

    def test_genus_unsupported(self):
        data = SurfaceGroupData(2, 1, ())
        with pytest.raises(GenusUnsupportedError):
            solve_fiber_symmetric(data, AlcovePoint.identity(2))


@pytest.mark.unit
class TestConstructions:
    """Decomposable representations and symmetric factorizations from solves."""

    def test_decomposable_representation(self, fast_opts):
        """The second class is the class of inverses of the first."""
        data = SurfaceGroupData.from_classes([[0.3, 0.05, -0.35], [0.35, -0.05, -0.3]])
        report, chain = decomposable_representation(data, fast_opts)
        assert report.converged
        assert chain_residual(report.witness.punctures, chain) < 1e-6
        assert all(is_symmetric_unitary(w, tol=1e-6, det_tol=1e-6) for w in chain)

    def test_symmetric_factorization(self, fast_opts):
        data = SurfaceGroupData.from_classes([[0.2, -0.2], [0.15, -0.15], [0.1, -0.1]])
        _, factors = symmetric_factorization(data, fast_opts)
        product = np.linalg.multi_dot(factors)
        assert np.linalg.norm(product - np.eye(2)) < 1e-6
        for a, spec in zip(factors, data.classes):
            assert spectrum_to_alcove(a.T @ a, tol=1e-6).x == pytest.approx(spec.lam.x, abs=1e-6)
