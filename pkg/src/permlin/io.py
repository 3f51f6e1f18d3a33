"""File formats: matrices (JSON/CSV), regime params (JSON), estimates
(JSON), and point-cloud CSVs.

CSV artifacts carry run metadata as leading '#' comment lines; JSON
artifacts carry it under a "meta" key.  The timestamp lives in its own
field/line so byte-level reproducibility checks can exclude it.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .decoder import Permutation
from .errors import ParameterError
from .estimators import EllipsoidData, Estimate, RegionSample
from .linalg import OrthonormalBasis, SymMatrix, helmert_q
from .regime import LinearRegimeParams


def read_matrix(path: str | Path) -> SymMatrix:
    """Load a matrix from JSON ({"n": ..., "entries": [[...], ...]}) or
    CSV (n rows of n comma-separated decimals), by file extension."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return read_matrix_csv(path)
    return read_matrix_json(path)


def read_matrix_json(path: str | Path) -> SymMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict) or "entries" not in data:
        raise ParameterError(f'matrix JSON must be an object with an "entries" key: {path}')
    entries = np.asarray(data["entries"], dtype=float)
    if "n" in data and entries.shape != (data["n"], data["n"]):
        raise ParameterError(
            f'matrix JSON "n" = {data["n"]} does not match entries shape {entries.shape}')
    return SymMatrix(entries)


def read_matrix_csv(path: str | Path) -> SymMatrix:
    rows = []
    with open(path, newline="") as fh:
        for record in csv.reader(fh):
            if not record or (record[0].lstrip().startswith("#")):
                continue
            rows.append([float(cell) for cell in record])
    if not rows:
        raise ParameterError(f"matrix CSV is empty: {path}")
    return SymMatrix(np.asarray(rows, dtype=float))


def matrix_to_dict(m: SymMatrix, meta: dict | None = None) -> dict:
    doc = {"n": m.n, "entries": m.entries.tolist()}
    if meta is not None:
        doc["meta"] = meta
    return doc


def write_matrix_json(m: SymMatrix, path: str | Path, meta: dict | None = None) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(m, meta), indent=2) + "\n")


def read_params(path: str | Path) -> LinearRegimeParams:
    """Load regime params: {"n", "gamma", "a", "v", "q"} with q either
    the string "helmert" or an explicit column matrix."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON in {path}: {exc}") from exc
    missing = {"n", "gamma", "a", "v"} - set(data)
    if missing:
        raise ParameterError(f"params file missing keys {sorted(missing)}: {path}")
    n = int(data["n"])
    q_spec = data.get("q", "helmert")
    if isinstance(q_spec, str):
        if q_spec != "helmert":
            raise ParameterError(f'unknown basis name {q_spec!r}; expected "helmert"')
        q = helmert_q(n)
    else:
        q = OrthonormalBasis(np.asarray(q_spec, dtype=float))
        if q.n != n:
            raise ParameterError(f'basis dimension {q.n} does not match "n" = {n}')
    return LinearRegimeParams(gamma=float(data["gamma"]), a=float(data["a"]),
                              v=float(data["v"]), q=q)


def parse_vector(text: str) -> np.ndarray:
    """Parse a vector given as a JSON array or a single CSV row."""
    text = text.strip()
    if text.startswith("["):
        try:
            return np.asarray(json.loads(text), dtype=float)
        except (json.JSONDecodeError, ValueError) as exc:
            raise ParameterError(f"invalid vector: {text!r}") from exc
    try:
        return np.asarray([float(t) for t in text.split(",") if t.strip() != ""], dtype=float)
    except ValueError as exc:
        raise ParameterError(f"invalid vector: {text!r}") from exc


def estimate_to_dict(est: Estimate, meta: dict | None = None) -> dict:
    doc = est.to_dict()
    if meta is not None:
        doc["meta"] = meta
    return doc


def _meta_lines(meta: dict | None) -> list[str]:
    if not meta:
        return []
    return [f"# {key}: {meta[key]}" for key in meta]


def write_region_csv(sample: RegionSample, path: str | Path,
                     meta: dict | None = None) -> None:
    """Columns y1..yn, label; the label is the comma-joined permutation
    (quoted by the csv module)."""
    n = sample.points.shape[1]
    with open(path, "w", newline="") as fh:
        for line in _meta_lines(meta):
            fh.write(line + "\n")
        writer = csv.writer(fh)
        writer.writerow([f"y{i + 1}" for i in range(n)] + ["label"])
        for point, label in zip(sample.points, sample.labels):
            writer.writerow([repr(float(v)) for v in point] + [label.to_text()])


def read_region_csv(path: str | Path) -> tuple[np.ndarray, list[Permutation]]:
    points, labels = [], []
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        raise ParameterError(f"region CSV is empty: {path}")
    header, body = rows[0], rows[1:]
    if header[-1] != "label" or not body:
        raise ParameterError(f"region CSV must have coordinate columns plus 'label': {path}")
    for row in body:
        points.append([float(v) for v in row[:-1]])
        labels.append(Permutation.from_text(row[-1]))
    return np.asarray(points), labels


def write_ellipsoid_csv(data: EllipsoidData, path: str | Path,
                        meta: dict | None = None) -> None:
    """Columns set,x1,x2,x3 with set in {surface, projection}."""
    with open(path, "w", newline="") as fh:
        for line in _meta_lines(meta):
            fh.write(line + "\n")
        writer = csv.writer(fh)
        writer.writerow(["set", "x1", "x2", "x3"])
        for name, block in (("surface", data.surface), ("projection", data.projection)):
            for point in block:
                writer.writerow([name] + [repr(float(v)) for v in point])


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
