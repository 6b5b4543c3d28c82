"""Pytest configuration and fixtures for qhpolytope tests."""

import json
import os
import tempfile
from pathlib import Path

import numpy as np
import pytest
import yaml

from qhpolytope.qham.types import Configuration, SurfaceGroupData
from qhpolytope.solver.types import SolveOptions
from qhpolytope.unitary.core import to_special
from qhpolytope.unitary.sampling import haar_su, rng_stream, sample_class
from qhpolytope.unitary.spectra import ConjClassSpec, spectrum_to_alcove

SU2_CLASSES = [[0.2, -0.2], [0.15, -0.15]]


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Seeded generator; tests that need more streams derive them with rng_stream."""
    return rng_stream(12345)


@pytest.fixture
def su2_data():
    """Two SU(2) classes with alcove coordinates 0.2 and 0.15."""
    return SurfaceGroupData.from_classes(SU2_CLASSES)


@pytest.fixture
def su3_data():
    """Two generic SU(3) classes."""
    return SurfaceGroupData.from_classes([[0.3, 0.05, -0.35], [0.25, -0.1, -0.15]])


@pytest.fixture
def fast_opts():
    """Solver options small enough for unit tests."""
    return SolveOptions(max_iters=1500, restarts=6, seed=3)


@pytest.fixture
def su2_spec_file(temp_dir):
    """Problem spec for the SU(2) two-class example."""
    spec = {"n": 2, "genus": 0, "classes": SU2_CLASSES, "seed": 7, "samples": 2000}
    path = temp_dir / "su2.json"
    path.write_text(json.dumps(spec))
    return str(path)


@pytest.fixture
def identity_spec_file(temp_dir):
    spec = {"n": 3, "genus": 0, "classes": [[0, 0, 0], [0, 0, 0]], "seed": 1, "samples": 64}
    path = temp_dir / "identity.json"
    path.write_text(json.dumps(spec))
    return str(path)


@pytest.fixture
def sample_config_file(temp_dir):
    """Create a sample configuration file."""
    config_data = {
        "tolerances": {"classify": 1e-7, "witness": 1e-7},
        "solver": {"restarts": 4, "max_iters": 500},
        "sampling": {"chunk_size": 1024, "jobs": 2, "grid": 11},
        "output": {"include_witness": True},
    }
    config_file = temp_dir / "test_config.yaml"
    with open(config_file, "w") as f:
        yaml.dump(config_data, f)
    return str(config_file)


def random_configuration(data: SurfaceGroupData, seed: int) -> Configuration:
    """Haar-random configuration of ``data`` from the stream ``(seed,)``."""
    rng = rng_stream(seed)
    handles = tuple(haar_su(data.n, rng) for _ in range(2 * data.genus))
    punctures = tuple(sample_class(spec, rng=rng) for spec in data.classes)
    return Configuration(data, handles, punctures)


def random_symmetric_su(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric special unitary ``u^T u`` for Haar ``u``."""
    u = haar_su(n, rng)
    return to_special(u.T @ u)


def random_class(n: int, rng: np.random.Generator) -> ConjClassSpec:
    """Class of a Haar-random special unitary."""
    return ConjClassSpec(spectrum_to_alcove(haar_su(n, rng)))


def configuration_of(punctures, handles=()) -> Configuration:
    """Configuration whose classes are read off the given punctures."""
    punctures = [np.asarray(c, dtype=complex) for c in punctures]
    n = (punctures[0] if punctures else handles[0]).shape[0]
    classes = tuple(ConjClassSpec(spectrum_to_alcove(c)) for c in punctures)
    data = SurfaceGroupData(n, len(handles) // 2, classes)
    return Configuration(data, tuple(handles), tuple(punctures))


def fixed_chain(n: int, l: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Fixed point of the involution with product I, built from factors multiplying to I."""
    from qhpolytope.solver.transfer import transfer_from_symmetric

    tail = [haar_su(n, rng) for _ in range(l - 1)]
    head = np.linalg.multi_dot(tail) if l > 2 else (tail[0] if tail else np.eye(n, dtype=complex))
    return transfer_from_symmetric([head.conj().T, *tail])


def decomposable_chain(n: int, l: int, rng: np.random.Generator) -> list[np.ndarray]:
    """``c_j = w_j w_{j+1}^{-1}`` (cyclic) for random symmetric ``w_j``."""
    w = [random_symmetric_su(n, rng) for _ in range(l)]
    return [w[j] @ w[(j + 1) % l].conj().T for j in range(l)]


@pytest.fixture(autouse=True)
def setup_test_env():
    """Keep environment overrides from leaking into tests."""
    names = [k for k in os.environ if k.startswith("QHPOLYTOPE_")]
    saved = {k: os.environ.pop(k) for k in names}

    yield

    for k in [k for k in os.environ if k.startswith("QHPOLYTOPE_")]:
        del os.environ[k]
    os.environ.update(saved)


# Pytest markers for test categorization
def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "property: mark test as a hypothesis property test")
