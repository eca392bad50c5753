"""Spatial encode -> bind -> bundle -> invert pipeline, generic over backends.

Stages A-E of the processing chain: datasets of coordinate-value pairs,
compositional positional encoding, value encoding, superposition memory, and
positional inversion (query).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .backends import BackendOps, get_ops
from .core import Backend, Hypervector, zero
from .errors import DimMismatch, EmptyMemory, NonFinite, ValueClampWarning
from .profiler import OpCounts
from .rng import STREAM_AXIS_BASE, STREAM_VALUE_BASE, make_rng

# Default exponent ranges for the fractional-power encoders. Chosen so the
# similarity kernel is sharp enough for cleanup to denoise 28x28 maps at
# D=8192 (wider kernels blur neighboring cells together and cleanup cannot
# recover the loss).
DEFAULT_POS_EXPONENT_RANGE = (0.0, 20.0)
DEFAULT_VALUE_EXPONENT_RANGE = (0.0, 12.0)


@dataclass(frozen=True)
class Sample:
    """One coordinate-value pair."""

    x: tuple
    v: float

    def __post_init__(self):
        if not all(np.isfinite(c) for c in self.x) or not np.isfinite(self.v):
            raise NonFinite(f"sample contains non-finite components: {self}")


@dataclass(frozen=True)
class Dataset:
    """N samples of n-dimensional coordinates with scalar values."""

    coords: np.ndarray  # (N, n) float64
    values: np.ndarray  # (N,) float64
    value_range: tuple

    def __post_init__(self):
        coords = np.atleast_2d(np.asarray(self.coords, dtype=np.float64))
        values = np.asarray(self.values, dtype=np.float64)
        if coords.shape[0] != values.size or values.size < 1:
            raise ValueError("coords and values must be non-empty and aligned")
        if not (np.all(np.isfinite(coords)) and np.all(np.isfinite(values))):
            raise NonFinite("dataset contains non-finite entries")
        lo, hi = map(float, self.value_range)
        if np.any(values < lo - 1e-12) or np.any(values > hi + 1e-12):
            raise ValueError("values fall outside the declared value_range")
        coords.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "value_range", (lo, hi))

    @property
    def n(self) -> int:
        return self.coords.shape[1]

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def samples(self) -> list:
        return [Sample(tuple(x), float(v)) for x, v in zip(self.coords, self.values)]

    @classmethod
    def from_samples(cls, samples: Sequence[Sample],
                     value_range: Optional[tuple] = None) -> "Dataset":
        coords = np.array([s.x for s in samples], dtype=np.float64)
        values = np.array([s.v for s in samples], dtype=np.float64)
        if value_range is None:
            value_range = (float(values.min()), float(values.max()))
        return cls(coords, values, value_range)

    def to_csv(self, path) -> None:
        header = ",".join([f"x{j}" for j in range(self.n)] + ["v"])
        rows = np.column_stack([self.coords, self.values])
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(header + "\n")
            for row in rows:
                f.write(",".join(repr(float(c)) for c in row) + "\n")

    @classmethod
    def from_csv(cls, path, value_range: Optional[tuple] = None) -> "Dataset":
        path = Path(path)
        with open(path, encoding="utf-8") as f:
            header = f.readline().strip().split(",")
            if header[-1] != "v" or header[:-1] != [f"x{j}" for j in range(len(header) - 1)]:
                raise ValueError(f"bad dataset header in {path}: {header}")
            data = np.loadtxt(f, delimiter=",", ndmin=2)
        coords, values = data[:, :-1], data[:, -1]
        if value_range is None:
            value_range = (float(values.min()), float(values.max()))
        return cls(coords, values, value_range)


def _affine(lo_raw, hi_raw, lo_exp, hi_exp):
    span = hi_raw - lo_raw
    scale = (hi_exp - lo_exp) / span if span != 0 else 0.0
    return lambda x: lo_exp + (np.asarray(x, dtype=np.float64) - lo_raw) * scale


class SpatialEncoder:
    """Per-axis fractional-power encoders plus a value encoder.

    Each axis uses an independently seeded base; raw coordinates and values
    are affinely mapped onto the encoder exponent ranges.
    """

    def __init__(self, ops: BackendOps, axis_bases: Sequence, value_base,
                 pos_ranges: Sequence[tuple], value_range: tuple,
                 pos_exponent_range: tuple = DEFAULT_POS_EXPONENT_RANGE,
                 value_exponent_range: tuple = DEFAULT_VALUE_EXPONENT_RANGE):
        if len(axis_bases) != len(pos_ranges):
            raise ValueError("one raw range is required per axis base")
        dims = {b.dim for b in axis_bases} | {value_base.dim}
        if len(dims) != 1:
            raise DimMismatch("all encoder bases must share one dimensionality")
        self.ops = ops
        self.axis_bases = tuple(axis_bases)
        self.value_base = value_base
        self.n = len(axis_bases)
        self.dim = value_base.dim
        self.value_range = (float(value_range[0]), float(value_range[1]))
        self.pos_exponent_range = tuple(map(float, pos_exponent_range))
        self.value_exponent_range = tuple(map(float, value_exponent_range))
        self._axis_maps = [_affine(*r, *self.pos_exponent_range) for r in pos_ranges]
        self._value_map = _affine(*self.value_range, *self.value_exponent_range)

    @classmethod
    def build(cls, backend: Backend | str, dim: int, n: int, seed: int,
              pos_ranges: Sequence[tuple], value_range: tuple,
              pos_exponent_range: tuple = DEFAULT_POS_EXPONENT_RANGE,
              value_exponent_range: tuple = DEFAULT_VALUE_EXPONENT_RANGE) -> "SpatialEncoder":
        ops = get_ops(backend)
        axis_bases = [ops.sample_base(make_rng(seed, STREAM_AXIS_BASE, j), dim)
                      for j in range(n)]
        value_base = ops.sample_base(make_rng(seed, STREAM_VALUE_BASE), dim)
        return cls(ops, axis_bases, value_base, pos_ranges, value_range,
                   pos_exponent_range, value_exponent_range)

    # -- positions -----------------------------------------------------

    def encode_position(self, x, counts: Optional[OpCounts] = None) -> Hypervector:
        """Bind the per-axis encodings of x: n encodings, n-1 binds."""
        return self.ops.wrap(self.encode_positions(np.atleast_2d(x), counts)[0])

    def encode_positions(self, coords: np.ndarray,
                         counts: Optional[OpCounts] = None) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
        if coords.shape[1] != self.n:
            raise DimMismatch(f"expected {self.n}-dimensional coordinates")
        if not np.all(np.isfinite(coords)):
            raise NonFinite("coordinates contain NaN/Inf")
        exps = np.column_stack([self._axis_maps[j](coords[:, j])
                                for j in range(self.n)])
        out = self.ops.encode_position_many(self.axis_bases, exps)
        if counts is not None:
            counts.encode += coords.shape[0] * self.n
            counts.bind += coords.shape[0] * (self.n - 1)
        return out

    # -- values ----------------------------------------------------------

    def encode_value(self, v: float, counts: Optional[OpCounts] = None) -> Hypervector:
        return self.ops.wrap(self.encode_values(np.atleast_1d(v), counts)[0])

    def encode_values(self, values: np.ndarray,
                      counts: Optional[OpCounts] = None) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise NonFinite("values contain NaN/Inf")
        lo, hi = self.value_range
        n_out = int(np.sum((values < lo) | (values > hi)))
        if n_out:
            warnings.warn(f"{n_out} value(s) outside [{lo}, {hi}] clamped before encoding",
                          ValueClampWarning, stacklevel=2)
            values = np.clip(values, lo, hi)
        if counts is not None:
            counts.encode += values.size
        return self.ops.encode_many(self.value_base, self._value_map(values))


class MemoryVector:
    """Bundled superposition of bound position-value pairs.

    The normalized form is computed lazily and cached; ``store`` returns a new
    memory, so the cache can never go stale.
    """

    def __init__(self, m: Hypervector, count: int):
        if count < 0:
            raise ValueError("count must be >= 0")
        if (count == 0) != (m.norm() == 0.0):
            raise ValueError("memory must be the zero vector iff count == 0")
        self.m = m
        self.count = count
        self._normalized: Optional[Hypervector] = None

    @property
    def backend(self) -> Backend:
        return self.m.backend

    @property
    def dim(self) -> int:
        return self.m.dim

    def normalized(self, counts: Optional[OpCounts] = None) -> Hypervector:
        if self.count == 0:
            raise EmptyMemory("cannot normalize an empty memory")
        if self._normalized is None:
            ops = get_ops(self.backend)
            self._normalized = ops.normalize(self.m)
            if counts is not None:
                counts.normalize += 1
        return self._normalized


def empty_memory(backend: Backend | str, dim: int) -> MemoryVector:
    ops = get_ops(backend)
    return MemoryVector(zero(ops.backend, dim), 0)


def store(mem: MemoryVector, p: Hypervector, vv: Hypervector,
          counts: Optional[OpCounts] = None) -> MemoryVector:
    """Add one bound pair to the memory: one bind plus one bundle."""
    ops = get_ops(mem.backend)
    bound = ops.bind(p, vv)
    new = ops.bundle(mem.m, bound)
    if counts is not None:
        counts.bind += 1
        counts.bundle += 1
    return MemoryVector(new, mem.count + 1)


def store_arrays(mem: MemoryVector, pos: np.ndarray, val: np.ndarray,
                 counts: Optional[OpCounts] = None) -> MemoryVector:
    """Batched store of N aligned position/value rows (N binds, N bundles)."""
    if pos.shape != val.shape:
        raise DimMismatch("position and value batches must align")
    ops = get_ops(mem.backend)
    bound = ops.bind_arrays(pos, val)
    total = bound.astype(np.complex128 if mem.backend is Backend.FHRR else np.float64).sum(axis=0)
    new = mem.m.values + total
    if counts is not None:
        counts.bind += pos.shape[0]
        counts.bundle += pos.shape[0]
    return MemoryVector(ops.wrap(new), mem.count + pos.shape[0])


def query(mem: MemoryVector, enc: SpatialEncoder, x_q,
          counts: Optional[OpCounts] = None,
          normalize_memory: bool = True) -> Hypervector:
    """Positional inversion: bind N(m) with the inverted query position."""
    return enc.ops.wrap(query_many(mem, enc, np.atleast_2d(x_q), counts,
                                   normalize_memory)[0])


def query_many(mem: MemoryVector, enc: SpatialEncoder, coords: np.ndarray,
               counts: Optional[OpCounts] = None,
               normalize_memory: bool = True) -> np.ndarray:
    """Batched positional inversion; one pos-encode, one invert, one bind each."""
    if mem.count < 1:
        raise EmptyMemory("query against an empty memory")
    if mem.dim != enc.dim or mem.backend is not enc.ops.backend:
        raise DimMismatch("memory and encoder backend/dim must match")
    coords = np.atleast_2d(np.asarray(coords, dtype=np.float64))
    m = mem.normalized(counts).values if normalize_memory else mem.m.values
    pos = enc.encode_positions(coords, counts)
    out = enc.ops.unbind_arrays(m, pos)
    if counts is not None:
        counts.invert += coords.shape[0]
        counts.bind += coords.shape[0]
    return out
