"""Render all three figure kinds from a real (small) benchmark results
directory produced by the primary package's CLI, and cross-check the drawn
data against the input files."""

import csv
import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from hyperspace_figures import (FigureKind, FigureSpec, SchemaError,
                                load_aggregate, load_grid_csv, load_records,
                                render)
from hyperspace_figures.cli import main


@pytest.fixture(scope="session")
def results_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("results")
    cmd = [sys.executable, "-m", "hyperspace.cli", "bench",
           "--seeds", "1", "--dim", "64", "--out", str(out)]
    subprocess.run(cmd, check=True, capture_output=True, text=True)
    return out


def test_stacked_latency_bar_sums_match_csv_totals(results_dir, tmp_path):
    spec = FigureSpec(FigureKind.STACKED_LATENCY, results_dir,
                      tmp_path / "latency.png")
    summary = render(spec)
    assert (tmp_path / "latency.png").stat().st_size > 0

    with open(results_dir / "records.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    by_cell = {}
    for row in rows:
        by_cell.setdefault(row["config_id"], []).append(float(row["t_total"]))
    assert set(summary["bar_totals"]) == set(by_cell)
    for cid, total in summary["bar_totals"].items():
        assert abs(total - np.mean(by_cell[cid])) < 1e-9
    assert summary["stage_order"][0] == "positional_encoding"
    assert summary["stage_order"][-1] == "regression"


def test_pareto_curve_touches_exactly_flagged_cells(results_dir, tmp_path):
    spec = FigureSpec(FigureKind.PARETO, results_dir, tmp_path / "pareto.png")
    summary = render(spec)
    assert (tmp_path / "pareto.png").stat().st_size > 0

    agg = json.loads((results_dir / "aggregate.json").read_text())
    flagged = {cid for cid, cell in agg["cells"].items() if cell["pareto"]}
    assert set(summary["frontier"]) == flagged
    # frontier is drawn in increasing-latency order
    lats = [summary["points"][c][0] for c in summary["frontier"]]
    assert lats == sorted(lats)
    assert set(summary["points"]) == set(agg["cells"])


def test_reconstruction_triptych_panels_and_scale(results_dir, tmp_path):
    spec = FigureSpec(FigureKind.RECONSTRUCTION, results_dir,
                      tmp_path / "recon.png")
    summary = render(spec)
    assert (tmp_path / "recon.png").stat().st_size > 0
    assert summary["panels"][0] == "ground truth"
    assert len(summary["panels"]) == 3
    assert all(shape == [28, 28] for shape in summary["shapes"])
    vmin, vmax = summary["color_scale"]
    assert vmin < vmax
    # the shared scale covers the ground-truth grid
    truth = load_grid_csv(results_dir / "ground_truth_0.csv")
    assert vmin <= truth.min() and truth.max() <= vmax
    # best cells really are the lowest-MSE cell of each backend
    cells = load_aggregate(results_dir / "aggregate.json")
    for backend, cid in summary["best_cells"].items():
        backend_cells = {c: v for c, v in cells.items()
                         if v["backend"] == backend}
        assert cells[cid]["mean_mse"] == min(
            v["mean_mse"] for v in backend_cells.values())


def test_renders_are_deterministic(results_dir, tmp_path):
    for kind in FigureKind:
        paths = [tmp_path / f"{kind.value}_{i}.png" for i in range(2)]
        for p in paths:
            render(FigureSpec(kind, results_dir, p))
        assert paths[0].read_bytes() == paths[1].read_bytes()


def test_cli_renders_all_kinds(results_dir, tmp_path, capsys):
    for kind in ("stacked_latency", "pareto", "reconstruction"):
        out = tmp_path / f"{kind}.png"
        assert main(["--kind", kind, "--in", str(results_dir),
                     "--out", str(out)]) == 0
        assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_missing_column_is_named(results_dir, tmp_path):
    broken = tmp_path / "broken"
    shutil.copytree(results_dir, broken)
    records = broken / "records.csv"
    lines = records.read_text().splitlines()
    header = lines[0].split(",")
    drop = header.index("mse")
    rewritten = [",".join(col for i, col in enumerate(line.split(","))
                          if i != drop) for line in lines]
    records.write_text("\n".join(rewritten) + "\n")
    with pytest.raises(SchemaError, match="mse"):
        load_records(records)


def test_missing_grid_file_and_bad_inputs(results_dir, tmp_path):
    with pytest.raises(FileNotFoundError):
        FigureSpec(FigureKind.PARETO, tmp_path / "nope", tmp_path / "x.png")
    spec = FigureSpec(FigureKind.RECONSTRUCTION, results_dir,
                      tmp_path / "x.png", seed=99)
    with pytest.raises(SchemaError, match="ground_truth_99"):
        render(spec)
    rc = main(["--kind", "reconstruction", "--in", str(results_dir),
               "--out", str(tmp_path / "x.png"), "--seed", "99"])
    assert rc == 2


def test_grid_loader_rejects_partial_grids(tmp_path):
    path = tmp_path / "partial.csv"
    path.write_text("x0,x1,v\n0.0,0.0,0.5\n1.0,1.0,0.25\n")
    with pytest.raises(SchemaError, match="full grid"):
        load_grid_csv(path)
