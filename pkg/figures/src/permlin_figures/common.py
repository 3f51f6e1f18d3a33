"""Shared CSV parsing and the deterministic label -> color assignment."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# tab10 hex values, fixed here so color assignment never depends on the
# matplotlib version
PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]


class SchemaError(ValueError):
    """The CSV does not match the expected figure schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str  # regions3d | cones | ellipsoid
    out: str
    elev: float = 20.0
    azim: float = -60.0

    def __post_init__(self):
        if self.kind not in ("regions3d", "cones", "ellipsoid"):
            raise SchemaError(f"unknown figure kind {self.kind!r}")


def _data_rows(path: str | Path) -> list[list[str]]:
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh)
                if row and not row[0].lstrip().startswith("#")]


def read_regions_csv(path: str | Path) -> tuple[np.ndarray, list[str]]:
    """Rows of (y1, y2, y3, label); exactly three coordinate columns."""
    rows = _data_rows(path)
    if not rows:
        raise SchemaError(f"empty CSV: {path}")
    header, body = rows[0], rows[1:]
    if header != ["y1", "y2", "y3", "label"]:
        raise SchemaError(
            f"regions CSV needs columns y1,y2,y3,label; got {header} in {path}")
    if not body:
        raise SchemaError(f"regions CSV has no data rows: {path}")
    points = np.array([[float(v) for v in row[:3]] for row in body])
    labels = [row[3] for row in body]
    return points, labels


def read_ellipsoid_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Rows of (set, x1, x2, x3) with set in {surface, projection}."""
    rows = _data_rows(path)
    if not rows:
        raise SchemaError(f"empty CSV: {path}")
    header, body = rows[0], rows[1:]
    if header != ["set", "x1", "x2", "x3"]:
        raise SchemaError(
            f"ellipsoid CSV needs columns set,x1,x2,x3; got {header} in {path}")
    sets: dict[str, list[list[float]]] = {"surface": [], "projection": []}
    for row in body:
        if row[0] not in sets:
            raise SchemaError(f"unknown set {row[0]!r} in {path}")
        sets[row[0]].append([float(v) for v in row[1:4]])
    if not sets["surface"] or not sets["projection"]:
        raise SchemaError(f"ellipsoid CSV must contain both point sets: {path}")
    return {name: np.array(pts) for name, pts in sets.items()}


def label_colors(labels: list[str]) -> dict[str, str]:
    """Deterministic mapping: distinct labels sorted by their integer
    sequences, colored from the fixed palette in that order."""
    def key(text: str) -> tuple[int, ...]:
        return tuple(int(t) for t in text.split(","))

    distinct = sorted(set(labels), key=key)
    return {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(distinct)}
