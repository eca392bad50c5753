"""Synthetic 2D cost maps: spline path between opposing corners plus an
exact Euclidean distance field.

A natural cubic spline is fit through seven control points (corners fixed,
five seeded interior points), sampled densely, and every grid cell is
assigned cost 1.0 plus its exact distance to the nearest path sample.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from . import accel
from .errors import DegenerateSpline
from .pipeline import Dataset
from .rng import STREAM_MAP, make_rng

N_CONTROL_POINTS = 7
N_PATH_SAMPLES = 10_000
BASE_COST = 1.0


@dataclass(frozen=True)
class CostMap:
    width: int
    height: int
    costs: np.ndarray          # (height, width) float64
    path_points: np.ndarray    # (N_PATH_SAMPLES, 2) continuous coordinates
    control_points: np.ndarray  # (7, 2)
    seed: int

    def __post_init__(self):
        for name in ("costs", "path_points", "control_points"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.costs.shape != (self.height, self.width):
            raise ValueError("cost grid shape must be (height, width)")


def sample_control_points(rng: np.random.Generator,
                          width: int = 28, height: int = 28) -> np.ndarray:
    """Seven control points: the opposing corners plus 5 seeded interior points."""
    interior = np.column_stack([
        rng.uniform(1.0, width - 2.0, 5),
        rng.uniform(1.0, height - 2.0, 5),
    ])
    return np.vstack([[0.0, 0.0], interior, [width - 1.0, height - 1.0]])


def spline_path(ctrl: np.ndarray, samples: int = N_PATH_SAMPLES) -> np.ndarray:
    """Natural cubic spline through the control points, densely sampled.

    Knots sit at t = 0..6; the path interpolates every control point.
    """
    ctrl = np.asarray(ctrl, dtype=np.float64)
    if ctrl.shape != (N_CONTROL_POINTS, 2):
        raise ValueError(f"expected {N_CONTROL_POINTS} 2-D control points")
    if np.allclose(ctrl, ctrl[0], atol=1e-12):
        raise DegenerateSpline("all control points coincide")
    t = np.arange(N_CONTROL_POINTS, dtype=np.float64)
    sx = CubicSpline(t, ctrl[:, 0], bc_type="natural")
    sy = CubicSpline(t, ctrl[:, 1], bc_type="natural")
    ts = np.linspace(0.0, N_CONTROL_POINTS - 1.0, samples)
    return np.column_stack([sx(ts), sy(ts)])


def distance_transform(path: np.ndarray, width: int, height: int) -> np.ndarray:
    """cost(cell) = 1.0 + exact distance from the cell center to the nearest
    path sample. Cell centers sit at integer (col, row) coordinates."""
    path = np.asarray(path, dtype=np.float64)
    if path.size == 0:
        raise ValueError("path must be nonempty")
    cols, rows = np.meshgrid(np.arange(width, dtype=np.float64),
                             np.arange(height, dtype=np.float64))
    d = accel.min_dist_to_points(cols.ravel(), rows.ravel(),
                                 path[:, 0], path[:, 1])
    return BASE_COST + d.reshape(height, width)


def generate_cost_map(seed: int, width: int = 28, height: int = 28) -> CostMap:
    rng = make_rng(seed, STREAM_MAP)
    ctrl = sample_control_points(rng, width, height)
    path = spline_path(ctrl)
    costs = distance_transform(path, width, height)
    return CostMap(width, height, costs, path, ctrl, int(seed))


def to_dataset(cm: CostMap, normalize: bool = True) -> tuple:
    """One sample per cell, x = (col, row); returns (Dataset, normalization).

    With ``normalize`` the values are min-max mapped to [0, 1]; the recorded
    affine transform {offset, scale} de-normalizes: raw = offset + scale * v.
    """
    cols, rows = np.meshgrid(np.arange(cm.width, dtype=np.float64),
                             np.arange(cm.height, dtype=np.float64))
    coords = np.column_stack([cols.ravel(), rows.ravel()])
    raw = cm.costs.ravel()
    if normalize:
        lo, hi = float(raw.min()), float(raw.max())
        scale = hi - lo if hi > lo else 1.0
        values = (raw - lo) / scale
        norm = {"offset": lo, "scale": scale}
        value_range = (0.0, 1.0)
    else:
        values = raw
        norm = {"offset": 0.0, "scale": 1.0}
        value_range = (float(raw.min()), float(raw.max()))
    return Dataset(coords, values, value_range), norm


def write_map(cm: CostMap, csv_path, normalize: bool = True,
              ppm_path: Optional[str] = None) -> None:
    """Write the dataset CSV, a JSON sidecar, and optionally a grayscale image."""
    csv_path = Path(csv_path)
    ds, norm = to_dataset(cm, normalize)
    ds.to_csv(csv_path)
    sidecar = {
        "seed": cm.seed,
        "control_points": cm.control_points.tolist(),
        "width": cm.width,
        "height": cm.height,
        "normalization": norm,
    }
    csv_path.with_suffix(".json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if ppm_path:
        write_ppm(cm, ppm_path)


def write_ppm(cm: CostMap, path) -> None:
    """Binary grayscale image (P5) of the cost field, dark = low cost."""
    lo, hi = cm.costs.min(), cm.costs.max()
    scale = (hi - lo) or 1.0
    gray = np.round((cm.costs - lo) / scale * 255.0).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(f"P5\n{cm.width} {cm.height}\n255\n".encode("ascii"))
        f.write(gray.tobytes())
