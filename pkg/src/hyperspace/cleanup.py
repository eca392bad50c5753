"""Iterative denoising of queried value vectors against a codebook.

Two attractor dynamics are provided: resonator feedback (raw similarity
weights, which may be negative and act subtractively) and modern-Hopfield
updates (softmax weights at temperature beta, one extra normalization per
step).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .backends import get_ops
from .core import Backend, Hypervector
from .errors import ZeroVector
from .pipeline import SpatialEncoder
from .profiler import OpCounts

_ZERO_EPS = 1e-12


class CleanupMethod(enum.Enum):
    NONE = "none"
    RESONATOR = "resonator"
    HOPFIELD = "hopfield"


@dataclass(frozen=True)
class CleanupConfig:
    method: CleanupMethod = CleanupMethod.NONE
    timesteps: int = 10
    beta: float = 20.0
    convergence_tol: float = 1e-6
    normalize_output: bool = True  # the outer N; exposed for ablation only

    def __post_init__(self):
        if self.timesteps < 1:
            raise ValueError("timesteps must be >= 1")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if self.convergence_tol < 0:
            raise ValueError("convergence_tol must be >= 0")


@dataclass(frozen=True)
class Codebook:
    """k anchor hypervectors over a quantized value grid."""

    entries: np.ndarray  # (k, D) backend dtype
    values: np.ndarray   # (k,) float64, strictly increasing
    backend: Backend

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if self.entries.shape[0] != values.size or values.size < 2:
            raise ValueError("codebook needs k >= 2 aligned entries/values")
        if np.any(np.diff(values) <= 0):
            raise ValueError("codebook values must be strictly increasing")
        entries = np.asarray(self.entries)
        entries.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        return self.values.size

    @property
    def dim(self) -> int:
        return self.entries.shape[1]

    def entry(self, i: int) -> Hypervector:
        return Hypervector(self.entries[i].copy(), self.backend)


def build_codebook(enc: SpatialEncoder, k: int) -> Codebook:
    """k evenly spaced quantization levels spanning the encoder value range."""
    if k < 2:
        raise ValueError("codebook requires k >= 2")
    lo, hi = enc.value_range
    values = lo + np.arange(k, dtype=np.float64) * ((hi - lo) / (k - 1))
    entries = enc.encode_values(values)
    return Codebook(entries, values, enc.ops.backend)


def _check_rows_nonzero(y: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(y, axis=1)
    if np.any(norms < _ZERO_EPS):
        raise ZeroVector("cleanup input contains a zero vector")
    return norms


def _softmax_rows(logits: np.ndarray) -> np.ndarray:
    w = np.exp(logits - logits.max(axis=1, keepdims=True))
    return w / w.sum(axis=1, keepdims=True)


def _step_many(y: np.ndarray, cb: Codebook, method: CleanupMethod,
               beta: float, normalize_output: bool,
               counts: Optional[OpCounts] = None) -> np.ndarray:
    """One cleanup timestep over the rows of y."""
    ops = get_ops(cb.backend)
    _check_rows_nonzero(y)
    sims = ops.similarity_matrix(y, cb.entries)
    if method is CleanupMethod.HOPFIELD:
        weights = _softmax_rows(beta * sims)
    else:
        weights = sims  # raw, possibly negative
    out = weights @ cb.entries.astype(
        np.complex128 if cb.backend is Backend.FHRR else np.float64)
    if normalize_output:
        norms = _check_rows_nonzero(out)
        out = out / norms[:, None]
    if counts is not None:
        n, k = sims.shape
        counts.similarity += n * k
        counts.weight += n * k
        counts.bundle += n * (k - 1)
        if normalize_output:
            counts.normalize += n
        if method is CleanupMethod.HOPFIELD:
            counts.softmax += n
    return out.astype(y.dtype if y.dtype.kind in "fc" else np.float64)


def resonator_step(y: Hypervector, cb: Codebook,
                   counts: Optional[OpCounts] = None,
                   normalize_output: bool = True) -> Hypervector:
    """Bundle of codebook entries weighted by raw similarity to y, normalized."""
    out = _step_many(y.values[None, :].astype(
        np.complex128 if cb.backend is Backend.FHRR else np.float64),
        cb, CleanupMethod.RESONATOR, 1.0, normalize_output, counts)
    return Hypervector(out[0], cb.backend)


def hopfield_step(y: Hypervector, cb: Codebook, beta: float,
                  counts: Optional[OpCounts] = None) -> Hypervector:
    """Bundle of codebook entries weighted by softmax(beta * similarities)."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    out = _step_many(y.values[None, :].astype(
        np.complex128 if cb.backend is Backend.FHRR else np.float64),
        cb, CleanupMethod.HOPFIELD, beta, True, counts)
    return Hypervector(out[0], cb.backend)


def run_cleanup(y: Hypervector, cb: Codebook, cfg: CleanupConfig,
                counts: Optional[OpCounts] = None) -> tuple:
    """Apply the configured step until convergence or cfg.timesteps.

    Returns (cleaned hypervector, iterations actually executed).
    """
    out, iters = run_cleanup_many(
        y.values[None, :], cb, cfg, counts)
    return Hypervector(out[0], cb.backend), int(iters[0])


def run_cleanup_many(y: np.ndarray, cb: Codebook, cfg: CleanupConfig,
                     counts: Optional[OpCounts] = None) -> tuple:
    """Batched cleanup over the rows of y; returns (cleaned rows, iterations)."""
    n = y.shape[0]
    if cfg.method is CleanupMethod.NONE:
        return y.copy(), np.zeros(n, dtype=np.int64)
    work = y.astype(np.complex128 if cb.backend is Backend.FHRR else np.float64)
    iters = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    for _ in range(cfg.timesteps):
        new = _step_many(work[active], cb, cfg.method, cfg.beta,
                         cfg.normalize_output, counts)
        delta = np.linalg.norm(new - work[active], axis=1)
        work[active] = new
        iters[active] += 1
        active = active[delta >= cfg.convergence_tol]
        if active.size == 0:
            break
    return work, iters
