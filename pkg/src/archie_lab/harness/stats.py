"""Success-curve aggregation: median and 25-75 percentile band per
evaluation step, linear interpolation between closest ranks (inclusive)."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..sac.train import METRICS_COLUMNS


class RaggedGridError(ValueError):
    """Runs evaluated on different step grids cannot be aggregated."""


@dataclass(frozen=True)
class CurveStats:
    steps: np.ndarray
    p25: np.ndarray
    median: np.ndarray
    p75: np.ndarray

    def __post_init__(self):
        if not (np.all(self.p25 <= self.median) and np.all(self.median <= self.p75)):
            raise ValueError("percentile ordering violated")


def aggregate_percentiles(steps: np.ndarray, values: np.ndarray) -> CurveStats:
    """`values` has one row per run, one column per step in `steps`."""
    steps = np.asarray(steps)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] != steps.shape[0]:
        raise ValueError(f"expected (runs, {steps.shape[0]}) values, got {values.shape}")
    if values.shape[0] < 1:
        raise ValueError("need at least one run per step")
    p25, median, p75 = np.percentile(values, [25.0, 50.0, 75.0], axis=0, method="linear")
    return CurveStats(steps=steps, p25=p25, median=median, p75=p75)


def read_success_curve(csv_path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Load (steps, success_rate) columns from a metrics CSV."""
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != METRICS_COLUMNS:
            raise ValueError(
                f"{csv_path}: unexpected columns {reader.fieldnames}, want {METRICS_COLUMNS}"
            )
        steps, rates = [], []
        for row in reader:
            steps.append(int(row["step"]))
            rates.append(float(row["success_rate"]))
    return np.array(steps), np.array(rates)


def curves_from_csvs(csv_paths: list[str | Path]) -> tuple[np.ndarray, np.ndarray]:
    """Stack success curves from several runs, rejecting ragged step grids."""
    if not csv_paths:
        raise ValueError("no metrics files given")
    grids, curves = [], []
    for path in csv_paths:
        steps, rates = read_success_curve(path)
        grids.append(steps)
        curves.append(rates)
    ref = grids[0]
    for path, grid in zip(csv_paths[1:], grids[1:]):
        if grid.shape != ref.shape or not np.array_equal(grid, ref):
            raise RaggedGridError(f"{path} has a different evaluation grid than {csv_paths[0]}")
    return ref, np.stack(curves)
