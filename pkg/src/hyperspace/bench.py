"""Benchmark harness: seeded end-to-end runs over the configuration grid.

Each run generates a cost map, pushes all samples through the pipeline,
times every stage with a monotonic clock, tallies abstract-operation counts,
and reports reconstruction MSE. Aggregates feed the per-stage latency
breakdown, the latency-accuracy Pareto sweep, and the map reconstructions.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import json
import os
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .backends import get_ops
from .cleanup import (CleanupConfig, CleanupMethod, build_codebook,
                      run_cleanup_many)
from .core import Backend
from .errors import StageError
from .mapgen import generate_cost_map, to_dataset
from .pipeline import (DEFAULT_POS_EXPONENT_RANGE, DEFAULT_VALUE_EXPONENT_RANGE,
                       SpatialEncoder, empty_memory, query_many, store_arrays)
from .profiler import OpCounts
from .regression import (NnConfig, RegressionConfig, RegressionMethod,
                         decode_codebook_many, train_mlp)

STAGES = (
    "positional_encoding",
    "value_encoding",
    "memory_storage",
    "positional_inversion",
    "cleanup",
    "regression",
)


@dataclass(frozen=True)
class RunConfig:
    backend: Backend = Backend.FHRR
    dim: int = 8192
    seeds: tuple = (0, 1, 2, 3, 4)
    cleanup: CleanupConfig = field(default_factory=CleanupConfig)
    regression: RegressionConfig = field(default_factory=RegressionConfig)
    map_width: int = 28
    map_height: int = 28
    codebook_k: int = 65
    pos_exponent_range: tuple = DEFAULT_POS_EXPONENT_RANGE
    value_exponent_range: tuple = DEFAULT_VALUE_EXPONENT_RANGE
    normalize_values: bool = True

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if len(self.seeds) < 1:
            raise ValueError("at least one seed is required")

    @property
    def config_id(self) -> str:
        return (f"{self.backend.name.lower()}-{self.cleanup.method.value}-"
                f"{self.regression.method.value}")


@dataclass
class BenchRecord:
    config_id: str
    backend: str
    cleanup: str
    regression: str
    dim: int
    seed: int
    mse: float
    vector_bytes: int
    cleanup_iterations_mean: float
    nn_train_mse: Optional[float]
    stage_seconds: dict
    stage_counts: dict  # stage -> OpCounts
    predictions: np.ndarray = field(repr=False, default=None)
    truth: np.ndarray = field(repr=False, default=None)
    coords: np.ndarray = field(repr=False, default=None)

    @property
    def total_seconds(self) -> float:
        return sum(self.stage_seconds.values())


class _StageTimer:
    def __init__(self):
        self.seconds = {s: 0.0 for s in STAGES}
        self.counts = {s: OpCounts() for s in STAGES}

    def run(self, stage, fn):
        t0 = time.perf_counter()
        try:
            out = fn(self.counts[stage])
        except Exception as exc:  # noqa: BLE001 - rewrapped with stage context
            raise StageError(stage, exc) from exc
        self.seconds[stage] += time.perf_counter() - t0
        return out


def _build_encoder(cfg: RunConfig, seed: int, value_range) -> SpatialEncoder:
    pos_ranges = [(0.0, cfg.map_width - 1.0), (0.0, cfg.map_height - 1.0)]
    return SpatialEncoder.build(cfg.backend, cfg.dim, 2, seed, pos_ranges,
                                value_range, cfg.pos_exponent_range,
                                cfg.value_exponent_range)


def run_pipeline(cfg: RunConfig, seed: int, warmup: bool = True) -> BenchRecord:
    """One seeded end-to-end run; every stage timed and op-counted."""
    cm = generate_cost_map(seed, cfg.map_width, cfg.map_height)
    ds, _ = to_dataset(cm, cfg.normalize_values)
    enc = _build_encoder(cfg, seed, ds.value_range)
    cb = build_codebook(enc, cfg.codebook_k)

    if warmup:
        _warmup(cfg, enc, cb, ds)

    timer = _StageTimer()
    pos = timer.run("positional_encoding",
                    lambda c: enc.encode_positions(ds.coords, c))
    val = timer.run("value_encoding",
                    lambda c: enc.encode_values(ds.values, c))
    mem = timer.run("memory_storage",
                    lambda c: store_arrays(empty_memory(cfg.backend, cfg.dim), pos, val, c))
    noisy = timer.run("positional_inversion",
                      lambda c: query_many(mem, enc, ds.coords, c))
    cleaned, iters = timer.run("cleanup",
                               lambda c: run_cleanup_many(noisy, cb, cfg.cleanup, c))

    nn_train_mse = None
    if cfg.regression.method is RegressionMethod.CODEBOOK:
        preds = timer.run("regression",
                          lambda c: decode_codebook_many(
                              cleaned, cb, cfg.regression.softmax_beta, c))
    else:
        def _train_and_decode(c):
            nn_cfg = replace(cfg.regression.nn, seed=seed)
            dec, train_mse = train_mlp(cleaned, ds.values, cfg.backend, nn_cfg)
            return dec.decode_many(cleaned), train_mse
        preds, nn_train_mse = timer.run("regression", _train_and_decode)

    mse = float(np.mean((preds - ds.values) ** 2))
    ops = get_ops(cfg.backend)
    return BenchRecord(
        config_id=cfg.config_id,
        backend=cfg.backend.name.lower(),
        cleanup=cfg.cleanup.method.value,
        regression=cfg.regression.method.value,
        dim=cfg.dim,
        seed=seed,
        mse=mse,
        vector_bytes=cfg.dim * ops.bytes_per_element,
        cleanup_iterations_mean=float(np.mean(iters)),
        nn_train_mse=nn_train_mse,
        stage_seconds=dict(timer.seconds),
        stage_counts=dict(timer.counts),
        predictions=np.asarray(preds, dtype=np.float64),
        truth=ds.values.copy(),
        coords=ds.coords.copy(),
    )


def _warmup(cfg: RunConfig, enc: SpatialEncoder, cb, ds) -> None:
    """Untimed pass over a few samples; compiles kernels and warms caches."""
    coords = ds.coords[:4]
    values = ds.values[:4]
    pos = enc.encode_positions(coords)
    val = enc.encode_values(values)
    mem = store_arrays(empty_memory(cfg.backend, cfg.dim), pos, val)
    noisy = query_many(mem, enc, coords)
    warm_cfg = dataclasses.replace(cfg.cleanup, timesteps=1) \
        if cfg.cleanup.method is not CleanupMethod.NONE else cfg.cleanup
    cleaned, _ = run_cleanup_many(noisy, cb, warm_cfg)
    decode_codebook_many(cleaned, cb, cfg.regression.softmax_beta)


def default_grid(dim: int = 8192, seeds: Sequence[int] = (0, 1, 2, 3, 4),
                 **overrides) -> list:
    """The 2x3x2 grid: backends x cleanup methods x regression methods."""
    configs = []
    for backend in (Backend.HRR, Backend.FHRR):
        for method in (CleanupMethod.NONE, CleanupMethod.RESONATOR,
                       CleanupMethod.HOPFIELD):
            for reg in (RegressionMethod.CODEBOOK, RegressionMethod.NEURALNET):
                configs.append(RunConfig(
                    backend=backend, dim=dim, seeds=tuple(seeds),
                    cleanup=CleanupConfig(method=method),
                    regression=RegressionConfig(method=reg),
                    **overrides))
    return configs


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("HYPERSPACE_THREADS", "1")))
    except ValueError:
        return 1


def run_grid(configs: Sequence[RunConfig]) -> tuple:
    """Run every (config, seed) cell; failures are recorded, not fatal.

    Returns (records, failures) where failures are dicts naming the failing
    stage. Cells run in at most HYPERSPACE_THREADS worker threads (default 1
    for clean timing).
    """
    if not configs:
        raise ValueError("configuration grid is empty")
    jobs = [(cfg, seed) for cfg in configs for seed in cfg.seeds]
    records, failures = [], []

    def _one(job):
        cfg, seed = job
        return run_pipeline(cfg, seed)

    workers = max_workers()
    if workers == 1:
        outcomes = []
        for job in jobs:
            try:
                outcomes.append((job, _one(job), None))
            except Exception as exc:  # noqa: BLE001
                outcomes.append((job, None, exc))
    else:
        outcomes = []
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
            futs = {ex.submit(_one, job): job for job in jobs}
            for fut in concurrent.futures.as_completed(futs):
                job = futs[fut]
                try:
                    outcomes.append((job, fut.result(), None))
                except Exception as exc:  # noqa: BLE001
                    outcomes.append((job, None, exc))
        outcomes.sort(key=lambda o: jobs.index(o[0]))

    for (cfg, seed), rec, exc in outcomes:
        if exc is None:
            records.append(rec)
        else:
            failures.append({
                "config_id": cfg.config_id,
                "seed": seed,
                "stage": getattr(exc, "stage", "setup"),
                "error": repr(exc),
            })
    return records, failures


def aggregate(records: Sequence[BenchRecord]) -> dict:
    """Per-configuration means/stds plus Pareto frontier membership."""
    cells: dict = {}
    for rec in records:
        cells.setdefault(rec.config_id, []).append(rec)
    agg = {}
    for cid, recs in cells.items():
        mses = np.array([r.mse for r in recs])
        totals = np.array([r.total_seconds for r in recs])
        agg[cid] = {
            "backend": recs[0].backend,
            "cleanup": recs[0].cleanup,
            "regression": recs[0].regression,
            "dim": recs[0].dim,
            "seeds": [r.seed for r in recs],
            "mean_mse": float(mses.mean()),
            "std_mse": float(mses.std()),
            "mean_total_seconds": float(totals.mean()),
            "std_total_seconds": float(totals.std()),
            "stage_mean_seconds": {
                s: float(np.mean([r.stage_seconds[s] for r in recs])) for s in STAGES},
            "pareto": False,
        }
    frontier = pareto_frontier(
        [(cid, a["mean_total_seconds"], a["mean_mse"]) for cid, a in agg.items()])
    for cid in frontier:
        agg[cid]["pareto"] = True
    return agg


def pareto_frontier(points: Sequence[tuple]) -> list:
    """IDs of points not dominated in (latency, mse), sorted by latency.

    A point is dominated when another is no worse on both axes and strictly
    better on at least one; exact ties are kept.
    """
    if not points:
        raise ValueError("pareto frontier of an empty set")
    kept = []
    for pid, lat, err in points:
        dominated = any(
            (ol <= lat and oe <= err and (ol < lat or oe < err))
            for _, ol, oe in points)
        if not dominated:
            kept.append((pid, lat, err))
    kept.sort(key=lambda p: (p[1], p[2]))
    return [pid for pid, _, _ in kept]


# -- report files ---------------------------------------------------------

_CSV_COLUMNS = (
    ["config_id", "backend", "cleanup", "regression", "dim", "seed", "mse",
     "vector_bytes", "cleanup_iterations_mean", "nn_train_mse", "op_counts"]
    + [f"t_{s}" for s in STAGES] + ["t_total"]
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit_reports(records: Sequence[BenchRecord], out_dir,
                 failures: Sequence[dict] = ()) -> dict:
    """Write records.csv, aggregate.json, reconstruction and truth grids.

    Re-running with an identical configuration produces byte-identical files
    apart from the timing (t_*) columns.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    agg = aggregate(records) if records else {}

    lines = [",".join(_CSV_COLUMNS)]
    for rec in records:
        counts_json = json.dumps(
            {s: rec.stage_counts[s].as_dict() for s in STAGES},
            sort_keys=True, separators=(",", ":"))
        row = [rec.config_id, rec.backend, rec.cleanup, rec.regression,
               rec.dim, rec.seed, rec.mse, rec.vector_bytes,
               rec.cleanup_iterations_mean, rec.nn_train_mse,
               '"' + counts_json.replace('"', '""') + '"']
        row += [rec.stage_seconds[s] for s in STAGES] + [rec.total_seconds]
        lines.append(",".join(_fmt(x) for x in row))
    (out / "records.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    payload = {"cells": agg, "failures": list(failures)}
    (out / "aggregate.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    truth_written = set()
    for rec in records:
        _write_grid_csv(out / f"reconstruction_{rec.config_id}_{rec.seed}.csv",
                        rec.coords, rec.predictions)
        if rec.seed not in truth_written:
            _write_grid_csv(out / f"ground_truth_{rec.seed}.csv",
                            rec.coords, rec.truth)
            truth_written.add(rec.seed)
    return agg


def _write_grid_csv(path, coords, values) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("x0,x1,v\n")
        for (c0, c1), v in zip(coords, values):
            f.write(f"{repr(float(c0))},{repr(float(c1))},{repr(float(v))}\n")
