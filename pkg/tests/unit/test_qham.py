"""Unit tests for configurations, the momentum map and the involution beta."""

from unittest.mock import patch

import numpy as np
import pytest

from qhpolytope.alcove import AlcovePoint
from qhpolytope.exceptions import (
    EigenFailureError,
    GenusUnsupportedError,
    NotInFiberError,
    NoWitnessError,
    ValidationError,
)
from qhpolytope.qham import (
    Configuration,
    SurfaceGroupData,
    beta,
    beta_residual,
    chain_residual,
    conjugate_configuration,
    decompose_witness,
    moment,
    twist_witness,
)
from qhpolytope.unitary import commutator, haar_su, is_symmetric_unitary, sample_class, spectrum_to_alcove, tau
from tests.conftest import (
    configuration_of,
    decomposable_chain,
    fixed_chain,
    random_class,
    random_configuration,
)


def _diag(*x: float) -> np.ndarray:
    return AlcovePoint(x).exp()


@pytest.mark.unit
class TestSurfaceGroupData:
    """Validation of problem data."""

    def test_from_classes(self):
        data = SurfaceGroupData.from_classes([[0.2, -0.2], [0.1, -0.1]])
        assert (data.n, data.genus, data.l) == (2, 0, 2)

    def test_genus_zero_needs_punctures(self):
        with pytest.raises(ValidationError) as excinfo:
            SurfaceGroupData(3, 0, ())
        assert excinfo.value.invariant == "data.punctures"

    def test_class_size_mismatch(self):
        data = SurfaceGroupData.from_classes([[0.2, -0.2]])
        with pytest.raises(ValidationError) as excinfo:
            SurfaceGroupData(3, 0, data.classes)
        assert excinfo.value.invariant == "data.class_size"

    def test_matches(self, su2_data):
        assert su2_data.matches(SurfaceGroupData.from_classes([[0.2, -0.2], [0.15, -0.15]]))
        assert not su2_data.matches(SurfaceGroupData.from_classes([[0.2, -0.2], [0.1, -0.1]]))


@pytest.mark.unit
class TestConfiguration:
    """Construction-time invariants of configurations."""

    def test_random_configuration_is_valid(self, su3_data):
        cfg = random_configuration(su3_data, seed=2)
        assert cfg.l == 2 and cfg.genus == 0

    def test_wrong_puncture_count(self, su2_data):
        with pytest.raises(ValidationError) as excinfo:
            Configuration(su2_data, (), (np.eye(2),))
        assert excinfo.value.invariant == "config.puncture_count"

    def test_wrong_class(self, su2_data):
        """Membership is checked from the spectrum."""
        with pytest.raises(ValidationError) as excinfo:
            Configuration(su2_data, (), (_diag(0.2, -0.2), _diag(0.3, -0.3)))
        assert excinfo.value.invariant == "config.class_membership"

    def test_conjugated_puncture_accepted(self, su2_data, rng):
        """Any matrix with the right spectrum is in the class."""
        k = haar_su(2, rng)
        cfg = Configuration(su2_data, (), (k @ _diag(0.2, -0.2) @ k.conj().T, _diag(0.15, -0.15)))
        assert cfg.l == 2

    def test_non_unitary_rejected(self, su2_data):
        with pytest.raises(ValidationError):
            Configuration(su2_data, (), (2 * np.eye(2), _diag(0.15, -0.15)))

    def test_immutable_components(self, su3_data):
        cfg = random_configuration(su3_data, seed=1)
        with pytest.raises(ValueError):
            cfg.punctures[0][0, 0] = 0

    def test_json_roundtrip(self, su3_data):
        cfg = random_configuration(su3_data, seed=4)
        assert Configuration.from_json(cfg.to_json()).distance(cfg) < 1e-12


@pytest.mark.unit
class TestMoment:
    """The group-valued momentum map."""

    def test_diagonal_product(self):
        d1, d2 = _diag(0.3, -0.3), _diag(0.1, -0.1)
        cfg = configuration_of([d1, d2])
        assert np.allclose(moment(cfg), d1 @ d2)

    def test_commuting_handles(self):
        """Commuting handles have trivial commutator and moment I."""
        data = SurfaceGroupData(3, 1, ())
        cfg = Configuration(data, (_diag(0.3, 0.0, -0.3), _diag(0.1, 0.1, -0.2)), ())
        assert np.allclose(moment(cfg), np.eye(3))

    def test_matches_direct_product(self, rng):
        a, b = haar_su(3, rng), haar_su(3, rng)
        c1 = sample_class(random_class(3, rng), rng=rng)
        c2 = sample_class(random_class(3, rng), rng=rng)
        cfg = configuration_of([c1, c2], handles=(a, b))
        assert np.allclose(moment(cfg), commutator(a, b) @ c1 @ c2, atol=1e-12)

    def test_equivariance(self, su3_data, rng):
        """moment(u . cfg) = u moment(cfg) u^-1."""
        cfg = random_configuration(su3_data, seed=8)
        u = haar_su(3, rng)
        moved = conjugate_configuration(u, cfg)
        assert np.allclose(moment(moved), u @ moment(cfg) @ u.conj().T, atol=1e-12)


@pytest.mark.unit
class TestBeta:
    """The involution on genus-0 configurations."""

    def test_diagonal_is_fixed(self):
        cfg = configuration_of([_diag(0.3, -0.3), _diag(0.1, -0.1)])
        assert beta_residual(cfg) < 1e-14
        assert beta(cfg).distance(cfg) < 1e-14

    def test_single_puncture_transposes(self, rng):
        c = sample_class(random_class(3, rng), rng=rng)
        cfg = configuration_of([c])
        assert np.allclose(beta(cfg).punctures[0], c.T)

    @pytest.mark.parametrize("n, l", [(2, 2), (3, 3), (4, 5), (5, 6)])
    def test_involution_properties(self, n, l):
        """beta^2 = id, classes are preserved and moment(beta(cfg)) = moment(cfg)^T."""
        data = SurfaceGroupData(n, 0, tuple(random_class(n, np.random.default_rng(l + j)) for j in range(l)))
        cfg = random_configuration(data, seed=n * 10 + l)
        image = beta(cfg)
        assert beta(image).distance(cfg) < 1e-10
        for c, spec in zip(image.punctures, data.classes):
            assert spectrum_to_alcove(c).x == pytest.approx(spec.lam.x, abs=1e-8)
        assert np.allclose(moment(image), moment(cfg).T, atol=1e-10)

    def test_twisted_equivariance(self, su3_data, rng):
        """beta(u . cfg) = tau(u) . beta(cfg)."""
        cfg = random_configuration(su3_data, seed=11)
        u = haar_su(3, rng)
        left = beta(conjugate_configuration(u, cfg))
        right = conjugate_configuration(tau(u), beta(cfg))
        assert left.distance(right) < 1e-10

    def test_genus_one_unsupported(self):
        data = SurfaceGroupData(2, 1, ())
        cfg = Configuration(data, (np.eye(2), np.eye(2)), ())
        with pytest.raises(GenusUnsupportedError):
            beta(cfg)
        with pytest.raises(GenusUnsupportedError):
            beta_residual(cfg)


@pytest.mark.unit
class TestTwistWitness:
    """Symmetric intertwiners between a configuration and its image."""

    def test_fixed_point_gives_identity(self, rng):
        cfg = configuration_of(fixed_chain(3, 3, rng))
        phi = twist_witness(cfg, tol=1e-8)
        assert np.allclose(phi, np.eye(3))

    def test_decomposable_configuration(self, rng):
        punctures = decomposable_chain(3, 3, rng)
        cfg = configuration_of(punctures)
        phi = twist_witness(cfg, tol=1e-8)
        assert is_symmetric_unitary(phi, tol=1e-8, det_tol=1e-8)
        image = beta(cfg).punctures
        for b, c in zip(image, cfg.punctures):
            assert np.linalg.norm(b @ phi - phi @ c) < 1e-8

    def test_generic_configuration_has_no_witness(self, rng):
        cfg = configuration_of([sample_class(random_class(3, rng), rng=rng) for _ in range(3)])
        with pytest.raises(NoWitnessError):
            twist_witness(cfg, tol=1e-8)


@pytest.mark.unit
class TestDecomposeWitness:
    """Symmetric chains behind decomposable configurations."""

    def test_identity_tuple(self):
        cfg = configuration_of([np.eye(3)] * 3)
        chain = decompose_witness(cfg)
        assert all(np.allclose(w, np.eye(3)) for w in chain)

    def test_diagonal_pair(self):
        """(D, D^-1) decomposes with residual at rounding level."""
        d = _diag(0.35, -0.1, -0.25)
        cfg = configuration_of([d, d.conj().T])
        chain = decompose_witness(cfg)
        assert chain_residual(cfg.punctures, chain) < 1e-10
        assert all(np.allclose(w, w.T) for w in chain)

    def test_fixed_point(self, rng):
        cfg = configuration_of(fixed_chain(4, 4, rng))
        chain = decompose_witness(cfg, tol=1e-7)
        assert chain_residual(cfg.punctures, chain) < 1e-7
        assert all(is_symmetric_unitary(w, tol=1e-7, det_tol=1e-7) for w in chain)

    def test_decomposable_but_not_fixed(self, rng):
        """Non-fixed inputs go through the twist witness."""
        cfg = configuration_of(decomposable_chain(3, 4, rng))
        assert beta_residual(cfg) > 1e-6
        chain = decompose_witness(cfg, tol=1e-7)
        assert chain_residual(cfg.punctures, chain) < 1e-7

    def test_outside_identity_fiber(self):
        cfg = configuration_of([_diag(0.3, -0.3), _diag(0.1, -0.1)])
        with pytest.raises(NotInFiberError):
            decompose_witness(cfg)

    def test_kernel_threshold_is_forwarded(self, rng):
        cfg = configuration_of(decomposable_chain(3, 4, rng))
        with patch("qhpolytope.qham.decomposition.twist_witness", wraps=twist_witness) as mock_twist:
            decompose_witness(cfg, tol=1e-7, kernel_rtol=1e-7)
        assert mock_twist.call_args.kwargs["kernel_rtol"] == 1e-7

    @pytest.mark.parametrize("chain", [fixed_chain, decomposable_chain])
    def test_reconstruction_bound_reaches_square_roots(self, rng, chain):
        """An unattainable Takagi bound fails on both the fixed and the twisted path."""
        cfg = configuration_of(chain(3, 4, rng))
        with pytest.raises(EigenFailureError):
            decompose_witness(cfg, tol=1e-7, reconstruction=-1.0)
