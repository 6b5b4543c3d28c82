"""Unit tests for problem specs and the JSON/CSV helpers."""

import json

import numpy as np
import pytest
import yaml

from qhpolytope.exceptions import ConfigurationError, ValidationError
from qhpolytope.io import (
    dumps,
    encode_roots,
    matrices_from_json,
    matrix_from_json,
    matrix_to_json,
    read_cloud_csv,
    write_cloud_csv,
    write_json,
)
from qhpolytope.spec import ProblemSpec
from qhpolytope.unitary import haar_su


@pytest.mark.unit
class TestProblemSpec:
    """Validation and loading of problem specs."""

    def test_minimal_spec(self):
        spec = ProblemSpec.from_mapping({"n": 2, "classes": [[0.2, -0.2]]})
        assert spec.genus == 0
        assert spec.seed == 0
        assert spec.samples == 10000

    def test_surface_data(self):
        spec = ProblemSpec.from_mapping({"n": 2, "classes": [[0.2, -0.2], [0.15, -0.15]], "seed": 7})
        data = spec.surface_data()
        assert (data.n, data.l) == (2, 2)
        assert data.classes[1].lam.x == (0.15, -0.15)

    def test_class_length_mismatch(self):
        with pytest.raises(ValidationError) as excinfo:
            ProblemSpec.from_mapping({"n": 3, "classes": [[0.2, -0.2]]})
        assert excinfo.value.invariant == "spec"

    def test_unknown_field(self):
        with pytest.raises(ValidationError):
            ProblemSpec.from_mapping({"n": 2, "classes": [[0, 0]], "colour": "red"})

    def test_genus_zero_needs_classes(self):
        with pytest.raises(ValidationError):
            ProblemSpec.from_mapping({"n": 2, "genus": 0})

    def test_genus_one_without_classes(self):
        assert ProblemSpec.from_mapping({"n": 2, "genus": 1}).surface_data().l == 0

    def test_tolerance_names(self):
        spec = ProblemSpec.from_mapping({"n": 2, "classes": [[0, 0]], "tolerances": {"classify": 1e-6}})
        assert spec.tolerances == {"classify": 1e-6}
        with pytest.raises(ValidationError):
            ProblemSpec.from_mapping({"n": 2, "classes": [[0, 0]], "tolerances": {"wobble": 1e-6}})
        with pytest.raises(ValidationError):
            ProblemSpec.from_mapping({"n": 2, "classes": [[0, 0]], "tolerances": {"classify": -1.0}})

    def test_class_outside_alcove(self):
        """Classes are checked as alcove points when the data is built."""
        spec = ProblemSpec.from_mapping({"n": 2, "classes": [[-0.2, 0.2]]})
        with pytest.raises(ValidationError) as excinfo:
            spec.surface_data()
        assert excinfo.value.invariant == "alcove.descending"

    def test_load_json_and_yaml(self, su2_spec_file, temp_dir):
        spec = ProblemSpec.load(su2_spec_file)
        assert spec.seed == 7
        yaml_path = temp_dir / "su2.yaml"
        yaml_path.write_text(yaml.dump(spec.to_json()))
        assert ProblemSpec.load(yaml_path) == spec

    def test_load_missing(self, temp_dir):
        with pytest.raises(ConfigurationError):
            ProblemSpec.load(temp_dir / "absent.json")

    def test_load_malformed(self, temp_dir):
        path = temp_dir / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigurationError):
            ProblemSpec.load(path)


@pytest.mark.unit
class TestMatrixJson:
    """Matrix encoding."""

    def test_encoding_layout(self):
        encoded = matrix_to_json(np.array([[1j, 0], [0, -1j]]))
        assert encoded[0][0] == [0.0, 1.0]
        assert encoded[1][1] == [0.0, -1.0]

    def test_decode_restores_matrix(self, rng):
        u = haar_su(3, rng)
        assert np.array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(u)))), u)

    def test_malformed_matrix(self):
        with pytest.raises(ValidationError) as excinfo:
            matrix_from_json([[1.0, 0.0], [0.0, 1.0]])
        assert excinfo.value.invariant == "matrix.format"

    def test_wrapped_lists(self):
        payload = {"A": [matrix_to_json(np.eye(2))]}
        assert len(matrices_from_json(payload)) == 1
        with pytest.raises(ValidationError):
            matrices_from_json({"other": []})


@pytest.mark.unit
class TestArtifacts:
    """Deterministic JSON and CSV artifacts."""

    def test_dumps_sorted_and_numpy_aware(self):
        text = dumps({"b": np.float64(1.5), "a": np.arange(2)})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [0, 1], "b": 1.5}

    def test_write_json_is_byte_stable(self, temp_dir):
        payload = {"x": [0.1, 0.2], "status": "Converged"}
        write_json(payload, temp_dir / "a.json")
        write_json(payload, temp_dir / "b.json")
        assert (temp_dir / "a.json").read_bytes() == (temp_dir / "b.json").read_bytes()

    def test_cloud_csv(self, temp_dir):
        points = np.array([[0.25, -0.25], [0.5, -0.5]])
        path = temp_dir / "nested" / "cloud.csv"
        write_cloud_csv(path, points, [("", ""), ("", encode_roots([[1, 2]]))])
        assert np.array_equal(read_cloud_csv(path), points)
        assert path.read_text().splitlines()[2] == "0.5,-0.5,,1-2"

    def test_encode_roots(self):
        assert encode_roots([[1, 2], [2, 3]]) == "1-2;2-3"
        assert encode_roots([]) == ""
