"""Serialization of matrices, reports and point clouds.

Matrices travel as row-major nested lists of ``[re, im]`` pairs. JSON
artifacts are written with sorted keys and no timestamps so that the same
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from .exceptions import ValidationError
from .types import MatrixJSON


def matrix_to_json(m: np.ndarray) -> MatrixJSON:
    """Encode a complex matrix as rows of ``[re, im]`` pairs."""
    arr = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def matrix_from_json(data: MatrixJSON) -> np.ndarray:
    """Decode rows of ``[re, im]`` pairs into a complex matrix."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Malformed matrix: {e}", field="matrix", invariant="matrix.format") from e
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
        raise ValidationError(
            "Matrix must be an n x n array of [re, im] pairs",
            field="matrix",
            value=list(arr.shape),
            invariant="matrix.format",
        )
    return arr[..., 0] + 1j * arr[..., 1]


def matrices_from_json(data: Any) -> list[np.ndarray]:
    """Decode a list of matrices, also accepting ``{"matrices": [...]}``."""
    if isinstance(data, dict):
        for key in ("matrices", "A", "w", "punctures"):
            if key in data:
                data = data[key]
                break
        else:
            raise ValidationError("No matrix list found", field="matrices", invariant="matrix.format")
    return [matrix_from_json(m) for m in data]


def dumps(payload: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, indent=2, sort_keys=True, default=_default)


def write_json(payload: Any, path: str | Path | None) -> str:
    """Write deterministic JSON to ``path`` (or just return it when ``path`` is None)."""
    text = dumps(payload)
    if path is not None:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n", encoding="utf-8")
    return text


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_cloud_csv(path: str | Path, points: np.ndarray, labels: Sequence[tuple[str, str]] | None = None) -> None:
    """Write alcove points as CSV with columns ``x1..xn, cell_Z0, cell_Z1``.

    Parameters
    ----------
    path : str or Path
        Output file
    points : ndarray, shape (N, n)
        Alcove coordinates
    labels : sequence of (str, str), optional
        Encoded Z0 and Z1 root lists per row; empty when omitted
    """
    points = np.atleast_2d(points)
    n = points.shape[1] if points.size else 0
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([f"x{k}" for k in range(1, n + 1)] + ["cell_Z0", "cell_Z1"])
        for row_index, row in enumerate(points):
            z0, z1 = labels[row_index] if labels is not None else ("", "")
            writer.writerow([repr(float(v)) for v in row] + [z0, z1])


def read_cloud_csv(path: str | Path) -> np.ndarray:
    """Read the coordinate columns of a cloud CSV."""
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        columns = [i for i, name in enumerate(header) if name.startswith("x")]
        rows = [[float(row[i]) for i in columns] for row in reader if row]
    return np.array(rows, dtype=float).reshape(-1, len(columns))


def encode_roots(pairs: Iterable[Sequence[int]]) -> str:
    """``[[1, 2], [2, 3]] -> "1-2;2-3"``."""
    return ";".join(f"{i}-{j}" for i, j in pairs)


def _default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "value"):
        return value.value
    return str(value)
