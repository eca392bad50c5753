"""Readers for the benchmark output schemas.

The benchmark emits:

* ``records.csv`` — one row per (configuration, seed) with ``t_<stage>``
  timing columns and a ``t_total`` column;
* ``aggregate.json`` — ``{"cells": {config_id: {...}}, "failures": [...]}``
  with per-cell means and a precomputed ``pareto`` flag;
* ``reconstruction_<config_id>_<seed>.csv`` / ``ground_truth_<seed>.csv`` —
  ``x0,x1,v`` grids of decoded and true values.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

# Pipeline order of the stage columns (the CSV emits them in this order).
STAGES = (
    "positional_encoding",
    "value_encoding",
    "memory_storage",
    "positional_inversion",
    "cleanup",
    "regression",
)

_RECORD_COLUMNS = (
    ["config_id", "backend", "cleanup", "regression", "dim", "seed", "mse"]
    + [f"t_{s}" for s in STAGES] + ["t_total"]
)

_CELL_KEYS = ("mean_mse", "mean_total_seconds", "stage_mean_seconds", "pareto")


class SchemaError(ValueError):
    """An input file is missing required columns or keys."""


def _require(present, required, where):
    missing = [c for c in required if c not in present]
    if missing:
        raise SchemaError(f"{where} is missing column(s): {', '.join(missing)}")


def load_records(path) -> list:
    """Rows of records.csv as dicts with numeric fields parsed."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        _require(reader.fieldnames or [], _RECORD_COLUMNS, path.name)
        rows = []
        for row in reader:
            for key in ["mse", "t_total"] + [f"t_{s}" for s in STAGES]:
                row[key] = float(row[key])
            row["dim"] = int(row["dim"])
            row["seed"] = int(row["seed"])
            rows.append(row)
    if not rows:
        raise SchemaError(f"{path.name} contains no records")
    return rows


def load_aggregate(path) -> dict:
    """The cells mapping of aggregate.json, validated."""
    path = Path(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    if "cells" not in payload:
        raise SchemaError(f"{path.name} is missing column(s): cells")
    cells = payload["cells"]
    if not cells:
        raise SchemaError(f"{path.name} contains no cells")
    for cid, cell in cells.items():
        _require(cell, _CELL_KEYS, f"{path.name} cell '{cid}'")
        _require(cell["stage_mean_seconds"], STAGES,
                 f"{path.name} cell '{cid}' stage_mean_seconds")
    return cells


def load_grid_csv(path) -> np.ndarray:
    """An x0,x1,v grid file as a (height, width) array of values."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        _require(reader.fieldnames or [], ("x0", "x1", "v"), path.name)
        cols, rows, vals = [], [], []
        for row in reader:
            cols.append(float(row["x0"]))
            rows.append(float(row["x1"]))
            vals.append(float(row["v"]))
    if not vals:
        raise SchemaError(f"{path.name} contains no samples")
    width = int(max(cols)) + 1
    height = int(max(rows)) + 1
    grid = np.full((height, width), np.nan)
    grid[np.asarray(rows, dtype=int), np.asarray(cols, dtype=int)] = vals
    if np.any(np.isnan(grid)):
        raise SchemaError(f"{path.name} does not cover the full grid")
    return grid
