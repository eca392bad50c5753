"""Figure rendering for hyperspace benchmark result directories.

Consumes the files emitted by `hyperspace bench`/`hyperspace run`
(records.csv, aggregate.json, reconstruction_*.csv, ground_truth_*.csv) and
draws the three standard figures: stacked per-stage latency bars, a
latency-MSE scatter with the Pareto frontier, and a ground-truth vs best-HRR
vs best-FHRR reconstruction triptych. All statistics are read from the input
files; nothing is recomputed here.
"""

__version__ = "0.1.0"

from .io import SchemaError, load_aggregate, load_grid_csv, load_records
from .render import FigureKind, FigureSpec, render

__all__ = [
    "FigureKind", "FigureSpec", "render",
    "SchemaError", "load_records", "load_aggregate", "load_grid_csv",
]
