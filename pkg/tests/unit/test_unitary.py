"""Unit tests for the special unitary kernel: involutions, spectra, sampling and Takagi."""

import numpy as np
import pytest

from qhpolytope.alcove import AlcovePoint
from qhpolytope.exceptions import EigenFailureError, NotSymmetricError, ValidationError
from qhpolytope.unitary import (
    ConjClassSpec,
    centralizer_dim,
    commutator,
    dagger,
    eigenphases,
    haar_su,
    is_special_unitary,
    is_symmetric_unitary,
    require_special_unitary,
    reunitarize,
    rng_stream,
    sample_class,
    sample_class_many,
    spectra_to_alcove,
    spectrum_to_alcove,
    sqrt_symmetric,
    takagi,
    tau,
    tau_minus,
)
from qhpolytope.unitary.takagi import reconstruction_error
from tests.conftest import random_symmetric_su


@pytest.mark.unit
class TestInvolutions:
    """tau, tau_minus and the commutator."""

    def test_tau_is_conjugation(self, rng):
        u = haar_su(3, rng)
        assert np.allclose(tau(u), np.conj(u))
        assert np.allclose(tau(tau(u)), u)

    def test_tau_minus_is_transpose_on_unitaries(self, rng):
        """tau(u^-1) = u^T for unitary u."""
        u = haar_su(4, rng)
        assert np.allclose(tau_minus(u), tau(np.linalg.inv(u)))
        assert np.allclose(tau_minus(u), u.T)

    def test_tau_is_automorphism(self, rng):
        a, b = haar_su(3, rng), haar_su(3, rng)
        assert np.allclose(tau(a @ b), tau(a) @ tau(b))

    def test_commutator_of_commuting(self, rng):
        """Commuting matrices have trivial commutator."""
        d = AlcovePoint((0.3, 0.1, -0.4)).exp()
        e = AlcovePoint((0.2, 0.0, -0.2)).exp()
        assert np.allclose(commutator(d, e), np.eye(3))
        u = haar_su(3, rng)
        assert is_special_unitary(commutator(u, d))


@pytest.mark.unit
class TestValidity:
    """Special unitary checks."""

    def test_haar_is_special_unitary(self, rng):
        for n in (2, 3, 5):
            assert is_special_unitary(haar_su(n, rng))

    def test_batched_haar(self, rng):
        stack = haar_su(3, rng, size=8)
        assert stack.shape == (8, 3, 3)
        assert np.allclose(np.linalg.det(stack), 1)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_haar_two_sided_invariance(self, n):
        """E tr k vanishes and E |tr k|^2 = 1, also after fixed left and right translations."""
        samples = 20000
        stack = haar_su(n, rng_stream(2024, n), size=samples)
        left, right = haar_su(n, rng_stream(7, n)), haar_su(n, rng_stream(8, n))
        for translated in (stack, left[None] @ stack @ right[None]):
            traces = np.trace(translated, axis1=-2, axis2=-1)
            assert abs(traces.mean()) ** 2 < 16 / samples
            assert np.mean(np.abs(traces) ** 2) == pytest.approx(1.0, abs=0.1)

    def test_require_rejects_non_unitary(self):
        with pytest.raises(ValidationError) as excinfo:
            require_special_unitary(np.diag([2.0, 0.5]), name="u")
        assert excinfo.value.invariant == "unitary.special"

    def test_require_rejects_wrong_determinant(self):
        """Unitary with det -1 is not in SU(n)."""
        with pytest.raises(ValidationError):
            require_special_unitary(np.diag([1.0, -1.0]))

    def test_require_rejects_non_square(self):
        with pytest.raises(ValidationError) as excinfo:
            require_special_unitary(np.ones((2, 3)))
        assert excinfo.value.invariant == "unitary.shape"

    def test_reunitarize_repairs_drift(self, rng):
        u = haar_su(4, rng)
        drifted = u + 1e-6 * rng.standard_normal((4, 4))
        assert is_special_unitary(reunitarize(drifted))
        assert np.linalg.norm(reunitarize(drifted) - u) < 1e-4

    def test_symmetric_check(self, rng):
        assert is_symmetric_unitary(random_symmetric_su(3, rng))
        assert not is_symmetric_unitary(haar_su(3, rng))


@pytest.mark.unit
class TestSpectra:
    """Alcove labels of matrices."""

    def test_diagonal_matches_point(self):
        x = AlcovePoint((0.35, 0.1, -0.45))
        assert spectrum_to_alcove(x.exp()).x == pytest.approx(x.x, abs=1e-12)

    def test_minus_identity(self):
        assert spectrum_to_alcove(-np.eye(2)).x == pytest.approx((0.5, -0.5))

    def test_conjugation_invariance(self, rng):
        """The label depends only on the conjugacy class."""
        x = AlcovePoint((0.25, 0.05, -0.3))
        k = haar_su(3, rng)
        assert spectrum_to_alcove(k @ x.exp() @ dagger(k)).x == pytest.approx(x.x, abs=1e-10)

    def test_eigenphases_in_turns(self):
        phases = eigenphases(np.diag(np.exp(2j * np.pi * np.array([0.25, -0.25]))))
        assert sorted(phases) == pytest.approx([-0.25, 0.25])

    def test_batched_labels(self, rng):
        stack = haar_su(3, rng, size=16)
        points, ok = spectra_to_alcove(stack)
        assert ok.all()
        for u, row in zip(stack, points):
            assert spectrum_to_alcove(u).x == pytest.approx(tuple(row), abs=1e-10)


@pytest.mark.unit
class TestClassSampling:
    """Seeded sampling of conjugacy classes."""

    def test_sample_lies_in_class(self):
        spec = ConjClassSpec.from_coords((0.3, 0.0, -0.3))
        u = sample_class(spec, seed=5)
        assert is_special_unitary(u)
        assert spectrum_to_alcove(u).x == pytest.approx(spec.lam.x, abs=1e-10)

    def test_deterministic_for_seed(self):
        spec = ConjClassSpec.from_coords((0.2, -0.2))
        assert np.array_equal(sample_class(spec, seed=9), sample_class(spec, seed=9))
        assert not np.allclose(sample_class(spec, seed=9), sample_class(spec, seed=10))

    def test_streams_are_independent(self):
        a = rng_stream(1, 2).standard_normal(4)
        b = rng_stream(1, 3).standard_normal(4)
        assert not np.allclose(a, b)
        assert np.array_equal(a, rng_stream(1, 2).standard_normal(4))

    def test_identity_class_is_identity(self, rng):
        """Central classes are single points."""
        u = sample_class(ConjClassSpec.identity(3), rng=rng)
        assert np.allclose(u, np.eye(3))

    def test_many_matches_class(self, rng):
        spec = ConjClassSpec.from_coords((0.4, -0.1, -0.3))
        stack = sample_class_many(spec, rng, 10)
        points, ok = spectra_to_alcove(stack)
        assert ok.all()
        assert np.allclose(points, np.array(spec.lam.x)[None, :], atol=1e-10)


@pytest.mark.unit
class TestCentralizer:
    """Numeric centralizer dimension."""

    def test_regular_element(self, rng):
        assert centralizer_dim(haar_su(3, rng)) == 2

    def test_central_element(self):
        assert centralizer_dim(np.eye(4, dtype=complex)) == 15

    def test_conjugation_invariant(self, rng):
        d = AlcovePoint((0.25, 0.25, -0.5)).exp()
        k = haar_su(3, rng)
        assert centralizer_dim(k @ d @ dagger(k)) == centralizer_dim(d) == 4


@pytest.mark.unit
class TestTakagi:
    """Takagi factorization and symmetric square roots."""

    def test_factorization_reconstructs(self, rng):
        for n in (2, 3, 5):
            w = random_symmetric_su(n, rng)
            o, phi = takagi(w)
            assert np.allclose(o.T @ o, np.eye(n), atol=1e-10)
            assert np.allclose(np.imag(o), 0)
            assert np.allclose(o @ np.diag(np.exp(1j * phi)) @ o.T, w, atol=1e-9)
            assert np.all(phi > -np.pi) and np.all(phi <= np.pi)

    def test_repeated_eigenvalues(self, rng):
        """Degenerate spectra still give a real orthogonal factor."""
        o_true, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        w = o_true @ np.diag(np.exp(1j * np.array([0.5, 0.5, -0.2, -0.8]))) @ o_true.T
        o, phi = takagi(w)
        assert np.allclose(o.T @ o, np.eye(4), atol=1e-10)
        assert np.allclose(o @ np.diag(np.exp(1j * phi)) @ o.T, w, atol=1e-9)

    @pytest.mark.parametrize("centre", [np.arctan(0.6180339887498949), 0.3, -1.2])
    @pytest.mark.parametrize("gap", [1e-7, 3e-7, 5e-7])
    def test_near_degenerate_cluster(self, rng, centre, gap):
        """Phases closer than the cluster tolerance are still separated exactly."""
        phases = np.array([centre + gap / 2, centre - gap / 2, -2 * centre])
        for _ in range(5):
            o_true, _ = np.linalg.qr(rng.standard_normal((3, 3)))
            w = (o_true * np.exp(1j * phases)) @ o_true.T
            o, phi = takagi(w)
            assert reconstruction_error(o, phi, w) <= 1e-9 * 3
            assert np.allclose(o.T @ o, np.eye(3), atol=1e-10)
            a = sqrt_symmetric(w)
            assert np.linalg.norm(a @ a - w) <= 1e-9 * 3

    def test_reconstruction_bound_is_enforced(self, rng):
        with pytest.raises(EigenFailureError):
            takagi(random_symmetric_su(3, rng), reconstruction=-1.0)

    def test_sign_convention(self, rng):
        """Each column's largest entry is positive."""
        o, _ = takagi(random_symmetric_su(4, rng))
        pivots = np.argmax(np.abs(o), axis=0)
        assert np.all(o[pivots, np.arange(4)] > 0)

    def test_rejects_asymmetric(self, rng):
        with pytest.raises(NotSymmetricError):
            takagi(haar_su(3, rng))

    def test_sqrt_squares_back(self, rng):
        for n in (2, 3, 4):
            w = random_symmetric_su(n, rng)
            a = sqrt_symmetric(w)
            assert is_symmetric_unitary(a, tol=1e-9, det_tol=1e-9)
            assert np.allclose(a.T @ a, w, atol=1e-9)

    def test_sqrt_of_minus_identity(self):
        """-I in SU(2) needs the determinant correction."""
        a = sqrt_symmetric(-np.eye(2, dtype=complex))
        assert np.allclose(a @ a, -np.eye(2), atol=1e-12)
        assert np.linalg.det(a) == pytest.approx(1)
        assert np.allclose(a, a.T)

    def test_sqrt_of_identity(self):
        assert np.allclose(sqrt_symmetric(np.eye(3, dtype=complex)), np.eye(3))

    def test_sqrt_rejects_wrong_determinant(self):
        with pytest.raises(ValidationError):
            sqrt_symmetric(np.diag([1.0, -1.0]).astype(complex))
