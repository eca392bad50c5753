"""The three figure kinds, drawn from a completed results directory.

Every renderer writes an image and returns a small summary of exactly what
was drawn (bar totals, frontier points, panel ranges) so callers and tests
can verify the drawing against the input files without parsing pixels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import STAGES, SchemaError, load_aggregate, load_grid_csv, load_records

_STAGE_COLORS = plt.get_cmap("viridis")(np.linspace(0.15, 0.9, len(STAGES)))


class FigureKind(enum.Enum):
    STACKED_LATENCY = "stacked_latency"
    PARETO = "pareto"
    RECONSTRUCTION = "reconstruction"


@dataclass(frozen=True)
class FigureSpec:
    kind: FigureKind
    input_dir: Path
    output_path: Path
    seed: int = 0          # reconstruction panels use this seed's grids
    dpi: int = 150
    title: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "input_dir", Path(self.input_dir))
        object.__setattr__(self, "output_path", Path(self.output_path))
        if not self.input_dir.is_dir():
            raise FileNotFoundError(f"input directory {self.input_dir} not found")


def render(spec: FigureSpec) -> dict:
    """Render one figure; returns a summary of the drawn data."""
    renderer = {
        FigureKind.STACKED_LATENCY: _render_stacked_latency,
        FigureKind.PARETO: _render_pareto,
        FigureKind.RECONSTRUCTION: _render_reconstruction,
    }[spec.kind]
    spec.output_path.parent.mkdir(parents=True, exist_ok=True)
    return renderer(spec)


def _save(fig, spec: FigureSpec) -> None:
    fig.savefig(spec.output_path, dpi=spec.dpi, bbox_inches="tight")
    plt.close(fig)


def _render_stacked_latency(spec: FigureSpec) -> dict:
    """One stacked bar per configuration; segments in pipeline-stage order."""
    cells = load_aggregate(spec.input_dir / "aggregate.json")
    cids = sorted(cells, key=lambda c: cells[c]["mean_total_seconds"])
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(cids)), 4.5))
    bottoms = np.zeros(len(cids))
    totals = {}
    for stage, color in zip(STAGES, _STAGE_COLORS):
        heights = np.array([cells[c]["stage_mean_seconds"][stage] for c in cids])
        ax.bar(range(len(cids)), heights, bottom=bottoms, label=stage,
               color=color, width=0.7)
        bottoms += heights
    for i, cid in enumerate(cids):
        totals[cid] = float(bottoms[i])
    ax.set_xticks(range(len(cids)))
    ax.set_xticklabels(cids, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("mean latency per run (s)")
    ax.set_title(spec.title or "Per-stage latency by configuration")
    ax.legend(fontsize=8)
    _save(fig, spec)
    return {"bar_totals": totals, "stage_order": list(STAGES)}


def _render_pareto(spec: FigureSpec) -> dict:
    """Latency-MSE scatter; dashed curve through the frontier-flagged cells."""
    cells = load_aggregate(spec.input_dir / "aggregate.json")
    pts = {c: (cell["mean_total_seconds"], cell["mean_mse"])
           for c, cell in cells.items()}
    frontier = sorted((c for c in cells if cells[c]["pareto"]),
                      key=lambda c: pts[c][0])
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for cid, (lat, err) in pts.items():
        on = cid in frontier
        ax.scatter(lat, err, s=45 if on else 25, zorder=3,
                   color="tab:red" if on else "tab:blue")
        ax.annotate(cid, (lat, err), fontsize=6,
                    textcoords="offset points", xytext=(4, 4))
    ax.plot([pts[c][0] for c in frontier], [pts[c][1] for c in frontier],
            "--", color="tab:red", zorder=2, label="Pareto frontier")
    ax.set_xlabel("mean latency (s)")
    ax.set_ylabel("mean MSE")
    ax.set_title(spec.title or "Latency vs reconstruction error")
    ax.legend(fontsize=8)
    _save(fig, spec)
    return {"frontier": frontier,
            "points": {c: list(p) for c, p in pts.items()}}


def _best_cell(cells: dict, backend: str) -> str:
    sub = [c for c, cell in cells.items() if cell["backend"] == backend]
    if not sub:
        raise SchemaError(f"aggregate.json has no cells for backend '{backend}'")
    return min(sub, key=lambda c: cells[c]["mean_mse"])


def _render_reconstruction(spec: FigureSpec) -> dict:
    """Ground truth vs best-HRR vs best-FHRR grids on one shared color scale."""
    cells = load_aggregate(spec.input_dir / "aggregate.json")
    truth_path = spec.input_dir / f"ground_truth_{spec.seed}.csv"
    if not truth_path.exists():
        raise SchemaError(f"ground_truth_{spec.seed}.csv not found in {spec.input_dir}")
    panels = [("ground truth", load_grid_csv(truth_path))]
    chosen = {}
    for backend in ("hrr", "fhrr"):
        cid = _best_cell(cells, backend)
        chosen[backend] = cid
        rec_path = spec.input_dir / f"reconstruction_{cid}_{spec.seed}.csv"
        if not rec_path.exists():
            raise SchemaError(f"{rec_path.name} not found in {spec.input_dir}")
        panels.append((cid, load_grid_csv(rec_path)))
    vmin = min(float(g.min()) for _, g in panels)
    vmax = max(float(g.max()) for _, g in panels)
    fig, axes = plt.subplots(1, 3, figsize=(10.5, 3.8))
    for ax, (label, grid) in zip(axes, panels):
        im = ax.imshow(grid, origin="lower", cmap="magma",
                       vmin=vmin, vmax=vmax)
        ax.set_title(label, fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.colorbar(im, ax=axes, shrink=0.85, label="normalized cost")
    fig.suptitle(spec.title or f"Reconstruction, seed {spec.seed}")
    _save(fig, spec)
    return {"panels": [label for label, _ in panels],
            "shapes": [list(g.shape) for _, g in panels],
            "color_scale": [vmin, vmax],
            "best_cells": chosen}
