"""Command-line interface.

Usage::

    hyperspace-figs --kind stacked_latency --in results/ --out figs/latency.png
    hyperspace-figs --kind pareto --in results/ --out figs/pareto.png
    hyperspace-figs --kind reconstruction --in results/ --out figs/recon.png
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .io import SchemaError
from .render import FigureKind, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspace-figs", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in FigureKind])
    p.add_argument("--in", dest="input_dir", required=True,
                   help="benchmark results directory")
    p.add_argument("--out", dest="output_path", required=True,
                   help="image file to write")
    p.add_argument("--seed", type=int, default=0,
                   help="seed of the grids shown in reconstruction panels")
    p.add_argument("--dpi", type=int, default=150)
    p.add_argument("--title", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=FigureKind(args.kind), input_dir=args.input_dir,
                      output_path=args.output_path, seed=args.seed,
                      dpi=args.dpi, title=args.title)
    try:
        render(spec)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
