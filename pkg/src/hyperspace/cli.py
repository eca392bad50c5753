"""Command-line interface.

Subcommands::

    hyperspace gen-map --seed 0 --size 28 --out map.csv [--ppm map.pgm]
    hyperspace run --config run.toml --out results/
    hyperspace bench --grid default --seeds 5 --dim 8192 --out results/
    hyperspace pareto results/records.csv

``HYPERSPACE_THREADS`` caps benchmark worker threads (default 1);
``HYPERSPACE_DISABLE_NUMBA=1`` forces the pure-numpy kernels.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import __version__
from .bench import default_grid, emit_reports, pareto_frontier, run_grid
from .config import load_run_config
from .mapgen import generate_cost_map, write_map


def _cmd_gen_map(args) -> int:
    cm = generate_cost_map(args.seed, args.size, args.size)
    write_map(cm, args.out, normalize=not args.raw_costs, ppm_path=args.ppm)
    print(f"wrote {args.out} (+ JSON sidecar)"
          + (f" and {args.ppm}" if args.ppm else ""))
    return 0


def _report(records, failures, out_dir) -> int:
    agg = emit_reports(records, out_dir, failures)
    for cid in sorted(agg):
        cell = agg[cid]
        star = " *" if cell["pareto"] else ""
        print(f"{cid:32s} mse={cell['mean_mse']:.6f} "
              f"latency={cell['mean_total_seconds']:.4f}s{star}")
    if failures:
        print(f"{len(failures)} cell(s) failed; see aggregate.json", file=sys.stderr)
    print(f"reports written to {out_dir}")
    return 1 if failures and not records else 0


def _cmd_run(args) -> int:
    cfg = load_run_config(args.config)
    records, failures = run_grid([cfg])
    return _report(records, failures, args.out)


def _cmd_bench(args) -> int:
    if args.grid != "default":
        print(f"unknown grid '{args.grid}'", file=sys.stderr)
        return 2
    configs = default_grid(dim=args.dim, seeds=tuple(range(args.seeds)))
    records, failures = run_grid(configs)
    return _report(records, failures, args.out)


def _cmd_pareto(args) -> int:
    with open(args.records, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    if not rows:
        print("no records", file=sys.stderr)
        return 2
    cells: dict = {}
    for row in rows:
        cells.setdefault(row["config_id"], []).append(
            (float(row["t_total"]), float(row["mse"])))
    points = []
    for cid, vals in cells.items():
        lat = sum(v[0] for v in vals) / len(vals)
        err = sum(v[1] for v in vals) / len(vals)
        points.append((cid, lat, err))
    frontier = set(pareto_frontier(points))
    for cid, lat, err in sorted(points, key=lambda p: p[1]):
        mark = "*" if cid in frontier else " "
        print(f"{mark} {cid:32s} latency={lat:.4f}s mse={err:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspace", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-map", help="generate a synthetic cost map")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", type=int, default=28)
    g.add_argument("--out", required=True)
    g.add_argument("--ppm", default=None, help="also write a grayscale image")
    g.add_argument("--raw-costs", action="store_true",
                   help="skip min-max normalization of costs")
    g.set_defaults(func=_cmd_gen_map)

    r = sub.add_parser("run", help="run one configuration from a TOML file")
    r.add_argument("--config", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=_cmd_run)

    b = sub.add_parser("bench", help="run the full configuration grid")
    b.add_argument("--grid", default="default")
    b.add_argument("--seeds", type=int, default=5)
    b.add_argument("--dim", type=int, default=8192)
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_bench)

    pa = sub.add_parser("pareto", help="print the Pareto frontier of a records.csv")
    pa.add_argument("records")
    pa.set_defaults(func=_cmd_pareto)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
