"""Acceptance gate: one test (and one printed PASS line) per top-level claim.

These run the full-scale configurations (D=8192 end-to-end, D=1024 grid
determinism) and are slower than the unit suite.
"""

import csv
import time

import numpy as np
import pytest

from hyperspace import Backend, get_ops, similarity, to_bytes
from hyperspace.bench import RunConfig, run_pipeline
from hyperspace.cleanup import CleanupConfig, CleanupMethod
from hyperspace.mapgen import BASE_COST, generate_cost_map
from hyperspace.regression import (RegressionConfig, RegressionMethod,
                                   init_mlp, mlp_gradients)
from hyperspace.rng import make_rng

SEEDS = (0, 1, 2, 3, 4)


def _report(name, detail=""):
    print(f"\n[PASS] {name}" + (f": {detail}" if detail else ""))


# ---------------------------------------------------------------------------

def test_algebra_oracle_suite():
    """HRR bind == direct circular convolution; FHRR identities exact."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    from hyperspace import Hypervector, hrr, fhrr
    worst_rel = 0.0
    for _ in range(200):
        dim = int(rng.integers(4, 65))
        a, b = rng.standard_normal((2, dim))
        direct = np.array([np.dot(a, b[(j - np.arange(dim)) % dim])
                           for j in range(dim)])
        out = hrr.bind(Hypervector(a, Backend.HRR),
                       Hypervector(b, Backend.HRR)).values
        rel = np.abs(out - direct).max() / max(np.abs(direct).max(), 1e-30)
        worst_rel = max(worst_rel, rel)
    assert worst_rel < 1e-6

    worst_abs = 0.0
    for s in range(50):
        base = fhrr.sample_base(make_rng(s, 1, 0), 64)
        e = fhrr.encode(base, float(rng.uniform(-5, 5)))
        ident = fhrr.bind(e, fhrr.invert(e)).values
        worst_abs = max(worst_abs, float(np.abs(ident - 1.0).max()))
        roundtrip = fhrr.invert(fhrr.invert(e)).values
        worst_abs = max(worst_abs, float(np.abs(roundtrip - e.values).max()))
    assert worst_abs < 1e-9

    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _report("algebra oracle suite",
            f"HRR rel err {worst_rel:.2e}, FHRR identity err {worst_abs:.2e}, "
            f"{elapsed:.2f}s")


def test_fpe_homomorphism():
    """similarity(E(x) bind E(y), E(x+y)) >= 1 - 1e-6 at D=1024, both backends."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 1.0
    for backend in Backend:
        ops = get_ops(backend)
        base = ops.sample_base(make_rng(0, 1, 0), 1024)
        for _ in range(100):
            x, y = rng.uniform(-10, 10, 2)
            lhs = ops.bind(ops.encode(base, x), ops.encode(base, y))
            worst = min(worst, similarity(lhs, ops.encode(base, x + y)))
    assert worst >= 1.0 - 1e-6
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _report("fractional power homomorphism",
            f"min similarity {worst:.9f}, {elapsed:.2f}s")


def test_single_pair_recall():
    """One stored pair: FHRR recall exact, HRR >= 0.999 at D=8192."""
    from hyperspace.pipeline import SpatialEncoder, empty_memory, query, store
    scores = {}
    for backend, dim in [(Backend.FHRR, 8192), (Backend.HRR, 8192)]:
        enc = SpatialEncoder.build(backend, dim, 2, 0,
                                   pos_ranges=[(0.0, 27.0)] * 2,
                                   value_range=(0.0, 1.0))
        mem = store(empty_memory(backend, dim),
                    enc.encode_position((11.0, 23.0)), enc.encode_value(0.4))
        y = query(mem, enc, (11.0, 23.0))
        scores[backend] = similarity(y, enc.encode_value(0.4))
    assert scores[Backend.FHRR] >= 1.0 - 1e-6
    assert scores[Backend.HRR] >= 0.999
    _report("single-pair recall",
            f"FHRR cos {scores[Backend.FHRR]:.9f}, "
            f"HRR cos {scores[Backend.HRR]:.6f}")


def test_edt_oracle():
    """Cost field equals brute-force nearest-path distance; corners cost 1.0."""
    t0 = time.perf_counter()
    worst = 0.0
    for seed in SEEDS:
        cm = generate_cost_map(seed)
        cols, rows = np.meshgrid(np.arange(28.0), np.arange(28.0))
        centers = np.column_stack([cols.ravel(), rows.ravel()])
        d2 = ((centers[:, None, :] - cm.path_points[None, :, :]) ** 2).sum(axis=2)
        brute = BASE_COST + np.sqrt(d2.min(axis=1)).reshape(28, 28)
        worst = max(worst, float(np.abs(cm.costs - brute).max()))
        # the spline starts/ends exactly on the corner cells
        assert abs(cm.costs[0, 0] - 1.0) < 1e-9
        assert abs(cm.costs[27, 27] - 1.0) < 1e-9
    assert worst < 1e-9
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report("Euclidean distance field oracle",
            f"max |diff| {worst:.2e} over {len(SEEDS)} seeds, {elapsed:.2f}s")


# -- full-scale end-to-end runs (shared by two criteria) ---------------------

@pytest.fixture(scope="module")
def full_scale_records():
    t0 = time.perf_counter()
    records = {}
    for backend in Backend:
        for method in (CleanupMethod.NONE, CleanupMethod.HOPFIELD):
            cfg = RunConfig(
                backend=backend, dim=8192, seeds=SEEDS,
                cleanup=CleanupConfig(method=method),
                regression=RegressionConfig(method=RegressionMethod.CODEBOOK))
            records[(backend, method)] = [run_pipeline(cfg, s) for s in SEEDS]
    return records, time.perf_counter() - t0


def test_end_to_end_hopfield_beats_no_cleanup(full_scale_records):
    """D=8192, 784 samples: Hopfield cleanup lowers mean MSE vs no cleanup."""
    records, elapsed = full_scale_records
    details = []
    for backend in Backend:
        mse_hop = np.mean([r.mse for r in records[(backend, CleanupMethod.HOPFIELD)]])
        mse_none = np.mean([r.mse for r in records[(backend, CleanupMethod.NONE)]])
        assert mse_hop < mse_none, f"{backend.name}: {mse_hop} !< {mse_none}"
        details.append(f"{backend.name.lower()} {mse_hop:.5f} < {mse_none:.5f}")
    assert elapsed < 300.0
    _report("end-to-end reconstruction",
            "mean MSE over 5 seeds: " + "; ".join(details) +
            f", {elapsed:.0f}s")


def test_stage_dominance(full_scale_records):
    """With cleanup enabled, cleanup+regression exceed 50% of wall-clock."""
    records, _ = full_scale_records
    shares = {}
    for backend in Backend:
        recs = records[(backend, CleanupMethod.HOPFIELD)]
        share = np.mean([
            (r.stage_seconds["cleanup"] + r.stage_seconds["regression"])
            / r.total_seconds for r in recs])
        shares[backend] = float(share)
        assert share > 0.5, f"{backend.name} share {share:.3f}"
    _report("stage dominance",
            ", ".join(f"{b.name.lower()} {s:.1%}" for b, s in shares.items()))


def test_storage_ratio():
    """Serialized FHRR payload is exactly twice the HRR payload at equal D."""
    header = 9
    for dim in (64, 1024, 8192):
        hrr_n = len(to_bytes(get_ops(Backend.HRR).identity(dim))) - header
        fhrr_n = len(to_bytes(get_ops(Backend.FHRR).identity(dim))) - header
        assert fhrr_n == 2 * hrr_n
    _report("storage ratio", "FHRR payload = exactly 2x HRR payload")


def test_operation_accounting():
    """Profiler counts match the per-stage formulas for n=2, k=65, N=784."""
    cfg = RunConfig(backend=Backend.FHRR, dim=256, seeds=(0,),
                    cleanup=CleanupConfig(method=CleanupMethod.HOPFIELD),
                    regression=RegressionConfig(method=RegressionMethod.CODEBOOK))
    rec = run_pipeline(cfg, 0)
    c = rec.stage_counts
    n, k, N = 2, 65, 784
    assert c["positional_encoding"].encode == n * N        # n encodings
    assert c["positional_encoding"].bind == (n - 1) * N    # n-1 binds
    assert c["value_encoding"].encode == N                 # 1 encoding
    assert c["memory_storage"].bind == N                   # 1 bind
    assert c["memory_storage"].bundle == N                 # 1 bundle
    assert c["positional_inversion"].encode == n * N       # query pos-encode
    assert c["positional_inversion"].bind == n * N         # axis binds + unbind
    assert c["positional_inversion"].invert == N
    assert c["positional_inversion"].normalize == 1        # cached N(m)
    steps = int(round(rec.cleanup_iterations_mean * N))
    assert steps > 0
    assert c["cleanup"].similarity == k * steps            # k sims / step
    assert c["cleanup"].weight == k * steps
    assert c["cleanup"].bundle == (k - 1) * steps
    assert c["cleanup"].normalize == steps
    assert c["regression"].similarity == k * N             # codebook decode
    _report("operation accounting", f"n={n}, k={k}, N={N} formulas exact")


def test_mlp_gradient_check():
    """Analytic gradients vs central differences, 1e-4 relative, D=16 decoder."""
    rng = np.random.default_rng(3)
    dec = init_mlp(16, 4, Backend.HRR, rng)
    z = rng.standard_normal((8, 16))
    t = rng.uniform(0, 1, 8)
    _, gw1, gb1, gw2, gb2 = mlp_gradients(dec, z, t)
    eps = 1e-6
    worst = 0.0
    for arr, grad in [(dec.w1, gw1), (dec.b1, gb1), (dec.w2, gw2), (dec.b2, gb2)]:
        it = np.nditer(arr, flags=["multi_index"])
        for _ in it:
            ix = it.multi_index
            old = arr[ix]
            arr[ix] = old + eps
            lp = float(np.mean((dec.forward(z) - t) ** 2))
            arr[ix] = old - eps
            lm = float(np.mean((dec.forward(z) - t) ** 2))
            arr[ix] = old
            fd = (lp - lm) / (2 * eps)
            rel = abs(fd - grad[ix]) / max(abs(fd), abs(grad[ix]), 1e-8)
            worst = max(worst, rel)
    assert worst < 1e-4
    _report("MLP gradient check", f"worst relative error {worst:.2e}")


def test_determinism_of_bench_grid(tmp_path):
    """Two `bench --seeds 5 --dim 1024` runs match apart from timing columns."""
    from hyperspace.cli import main

    def run(out):
        assert main(["bench", "--seeds", "5", "--dim", "1024",
                     "--out", str(out)]) == 0
        with open(out / "records.csv", newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader)
            keep = [i for i, name in enumerate(header)
                    if not name.startswith("t_")]
            return [",".join(row[i] for i in keep) for row in reader]

    rows_a = run(tmp_path / "a")
    rows_b = run(tmp_path / "b")
    assert rows_a == rows_b
    assert len(rows_a) == 12 * 5
    _report("determinism",
            f"{len(rows_a)} records byte-identical excluding timing columns")
