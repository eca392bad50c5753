"""hyperspace: backend-agnostic hyperdimensional computing for spatial maps.

Pipeline: encode -> bind -> bundle -> invert -> cleanup -> regress, with HRR
(real, FFT-based) and FHRR (complex phasor) backends, a synthetic cost-map
generator, and a per-stage latency benchmark harness.
"""

__version__ = "0.1.0"

from .backends import FHRR_OPS, HRR_OPS, BackendOps, get_ops
from .core import (Backend, Hypervector, bundle, from_bytes, normalize,
                   similarity, to_bytes, weight, zero)
from .profiler import OpCounts

__all__ = [
    "Backend", "BackendOps", "Hypervector", "OpCounts",
    "HRR_OPS", "FHRR_OPS", "get_ops",
    "bundle", "normalize", "similarity", "weight", "zero",
    "to_bytes", "from_bytes",
]
