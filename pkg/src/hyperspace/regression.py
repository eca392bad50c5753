"""Decoding cleaned value hypervectors back to scalars.

Codebook decoding takes a softmax-weighted expectation over the quantized
codebook values; the neural decoder is a single-hidden-layer ReLU network
trained by mini-batch SGD on squared error. Complex (FHRR) inputs are
realified by concatenating real and imaginary parts.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field

import numpy as np

from .cleanup import Codebook, _softmax_rows
from .core import Backend, Hypervector
from .errors import DimMismatch, TrainingDiverged, Untrained, ZeroVector
from .profiler import OpCounts
from .rng import STREAM_MLP, make_rng

MLP_MAGIC = b"HSNN1"


class RegressionMethod(enum.Enum):
    CODEBOOK = "codebook"
    NEURALNET = "neuralnet"


@dataclass(frozen=True)
class NnConfig:
    hidden_width: int = 128
    epochs: int = 50
    learning_rate: float = 0.1
    batch_size: int = 64
    seed: int = 0

    def __post_init__(self):
        if min(self.hidden_width, self.epochs, self.batch_size) < 1 or self.learning_rate <= 0:
            raise ValueError("nn hyperparameters must be positive")


@dataclass(frozen=True)
class RegressionConfig:
    method: RegressionMethod = RegressionMethod.CODEBOOK
    softmax_beta: float = 100.0
    nn: NnConfig = field(default_factory=NnConfig)

    def __post_init__(self):
        if self.softmax_beta < 0:
            raise ValueError("softmax_beta must be >= 0")


# -- codebook expectation decoding -------------------------------------


def decode_codebook(y: Hypervector, cb: Codebook, beta_r: float = 100.0,
                    counts: OpCounts | None = None) -> float:
    """Softmax-weighted expectation of codebook values; k similarity ops."""
    return float(decode_codebook_many(
        y.values[None, :], cb, beta_r, counts)[0])


def decode_codebook_many(y: np.ndarray, cb: Codebook, beta_r: float = 100.0,
                         counts: OpCounts | None = None) -> np.ndarray:
    from .backends import get_ops
    ops = get_ops(cb.backend)
    norms = np.linalg.norm(y, axis=1)
    if np.any(norms < 1e-12):
        raise ZeroVector("cannot decode a zero vector")
    sims = ops.similarity_matrix(y, cb.entries)
    weights = _softmax_rows(beta_r * sims)
    if counts is not None:
        counts.similarity += sims.size
        counts.softmax += sims.shape[0]
    return weights @ cb.values


# -- neural decoding ----------------------------------------------------


def realify(y: np.ndarray, backend: Backend) -> np.ndarray:
    """Map backend arrays to real MLP inputs: FHRR concatenates re/im (width 2D)."""
    y = np.atleast_2d(y)
    if backend is Backend.FHRR:
        return np.concatenate([y.real, y.imag], axis=1).astype(np.float64)
    return y.astype(np.float64)


@dataclass
class MlpDecoder:
    """One-hidden-layer ReLU regressor: input (D or 2D) -> hidden -> scalar."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    backend: Backend
    trained: bool = False

    @property
    def input_width(self) -> int:
        return self.w1.shape[0]

    @property
    def hidden_width(self) -> int:
        return self.w1.shape[1]

    def forward(self, z: np.ndarray) -> np.ndarray:
        h = np.maximum(z @ self.w1 + self.b1, 0.0)
        return (h @ self.w2 + self.b2).ravel()

    def decode_many(self, y: np.ndarray) -> np.ndarray:
        if not self.trained:
            raise Untrained("decoder has not been trained")
        z = realify(y, self.backend)
        if z.shape[1] != self.input_width:
            raise DimMismatch(f"decoder expects width {self.input_width}, got {z.shape[1]}")
        return self.forward(z)

    def decode(self, y: Hypervector) -> float:
        if y.backend is not self.backend:
            raise DimMismatch("decoder/backend mismatch")
        return float(self.decode_many(y.values[None, :])[0])


def init_mlp(input_width: int, hidden_width: int, backend: Backend,
             rng: np.random.Generator) -> MlpDecoder:
    """Uniform init scaled by 1/sqrt(fan_in); zero biases."""
    w1 = rng.uniform(-1.0, 1.0, (input_width, hidden_width)) / np.sqrt(input_width)
    w2 = rng.uniform(-1.0, 1.0, (hidden_width, 1)) / np.sqrt(hidden_width)
    return MlpDecoder(w1, np.zeros(hidden_width), w2, np.zeros(1), backend)


def mlp_gradients(dec: MlpDecoder, z: np.ndarray, t: np.ndarray) -> tuple:
    """Analytic gradients of mean squared error over the batch (z, t)."""
    h = np.maximum(z @ dec.w1 + dec.b1, 0.0)
    pred = (h @ dec.w2 + dec.b2).ravel()
    g = 2.0 * (pred - t) / t.size
    gw2 = h.T @ g[:, None]
    gb2 = np.array([g.sum()])
    gh = g[:, None] @ dec.w2.T
    gh[h <= 0.0] = 0.0
    gw1 = z.T @ gh
    gb1 = gh.sum(axis=0)
    loss = float(np.mean((pred - t) ** 2))
    return loss, gw1, gb1, gw2, gb2


def train_mlp(y: np.ndarray, targets: np.ndarray, backend: Backend,
              cfg: NnConfig = NnConfig()) -> tuple:
    """Train on (vector, scalar) pairs; returns (decoder, final training MSE).

    Deterministic given cfg.seed: init and per-epoch shuffles come from one
    seeded stream, and training is single-threaded.
    """
    z = realify(np.atleast_2d(y), backend)
    t = np.asarray(targets, dtype=np.float64).ravel()
    if t.size < 1 or z.shape[0] != t.size:
        raise ValueError("need >= 1 aligned training pair")
    rng = make_rng(cfg.seed, STREAM_MLP)
    dec = init_mlp(z.shape[1], cfg.hidden_width, backend, rng)
    lr = cfg.learning_rate
    for _ in range(cfg.epochs):
        order = rng.permutation(t.size)
        for start in range(0, t.size, cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            loss, gw1, gb1, gw2, gb2 = mlp_gradients(dec, z[idx], t[idx])
            if not np.isfinite(loss):
                raise TrainingDiverged(f"loss became {loss}")
            dec.w1 -= lr * gw1
            dec.b1 -= lr * gb1
            dec.w2 -= lr * gw2
            dec.b2 -= lr * gb2
    final_mse = float(np.mean((dec.forward(z) - t) ** 2))
    if not np.isfinite(final_mse):
        raise TrainingDiverged("final loss is not finite")
    dec.trained = True
    return dec, final_mse


# -- decoder serialization (versioned magic 'HSNN1') ---------------------

_MLP_HEADER = struct.Struct("<5sBII")  # magic, backend, input_width, hidden_width


def save_mlp(dec: MlpDecoder, path) -> None:
    """Binary header + row-major float32 weight matrices."""
    with open(path, "wb") as f:
        f.write(_MLP_HEADER.pack(MLP_MAGIC, dec.backend.value,
                                 dec.input_width, dec.hidden_width))
        for arr in (dec.w1, dec.b1, dec.w2, dec.b2):
            f.write(np.ascontiguousarray(arr, dtype="<f4").tobytes())


def load_mlp(path) -> MlpDecoder:
    with open(path, "rb") as f:
        magic, tag, din, hid = _MLP_HEADER.unpack(f.read(_MLP_HEADER.size))
        if magic != MLP_MAGIC:
            raise ValueError(f"bad decoder magic {magic!r}")
        def read(shape):
            n = int(np.prod(shape))
            return np.frombuffer(f.read(4 * n), dtype="<f4").astype(np.float64).reshape(shape)
        w1 = read((din, hid))
        b1 = read((hid,))
        w2 = read((hid, 1))
        b2 = read((1,))
    return MlpDecoder(w1, b1, w2, b2, Backend(tag), trained=True)
