"""Fourier Holographic Reduced Representations backend.

Complex unit-phasor vectors; encoding is direct complex exponentiation,
binding is element-wise multiplication, inversion is conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import accel
from .core import Backend, Hypervector, check_match
from .errors import NonFinite


@dataclass(frozen=True)
class FhrrBase:
    """Base vector stored as per-element phase angles in [-pi, pi)."""

    dim: int
    phases: np.ndarray  # float64, length dim

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("FHRR base requires dim >= 1")
        ph = np.asarray(self.phases, dtype=np.float64)
        if ph.shape != (self.dim,):
            raise ValueError("phase array must have length dim")
        if np.any(ph < -np.pi) or np.any(ph >= np.pi):
            raise ValueError("phases must lie in [-pi, pi)")
        ph.flags.writeable = False
        object.__setattr__(self, "phases", ph)

    def vector(self) -> Hypervector:
        return encode(self, 1.0)


def sample_base(rng: np.random.Generator, dim: int) -> FhrrBase:
    """Phases drawn i.i.d. uniform on [-pi, pi)."""
    return FhrrBase(dim, rng.uniform(-np.pi, np.pi, dim))


def encode(base: FhrrBase, x: float) -> Hypervector:
    """Element j = exp(i * phase_j * x); all moduli 1."""
    x = float(x)
    if not np.isfinite(x):
        raise NonFinite(f"encoding exponent is not finite: {x}")
    return Hypervector(np.exp(1j * base.phases * x), Backend.FHRR)


def encode_many(base: FhrrBase, xs: np.ndarray) -> np.ndarray:
    """Batched encoding; returns an (N, D) complex128 array."""
    xs = np.asarray(xs, dtype=np.float64)
    if not np.all(np.isfinite(xs)):
        raise NonFinite("encoding exponents contain NaN/Inf")
    return accel.phasor_matrix(xs, base.phases)


def encode_position_many(bases, exps: np.ndarray) -> np.ndarray:
    """Bind per-axis fractional powers: the element-wise phasor product."""
    exps = np.atleast_2d(np.asarray(exps, dtype=np.float64))
    out = accel.phasor_matrix(exps[:, 0], bases[0].phases)
    for j in range(1, exps.shape[1]):
        out *= accel.phasor_matrix(exps[:, j], bases[j].phases)
    return out


def unbind_arrays(m: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """bind(invert(pos_i), m) for every row: conjugate product."""
    return np.conj(np.asarray(pos, dtype=np.complex128)) * \
        np.asarray(m, dtype=np.complex128)[None, :]


def bind(a: Hypervector, b: Hypervector) -> Hypervector:
    """Element-wise complex product."""
    check_match(a, b)
    return Hypervector(bind_arrays(a.values, b.values), Backend.FHRR)


def bind_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128) * np.asarray(b, dtype=np.complex128)


def invert(a: Hypervector) -> Hypervector:
    """Element-wise conjugate; exact inverse under bind for unit phasors."""
    return Hypervector(np.conj(a.values), Backend.FHRR)


def invert_arrays(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a, dtype=np.complex128))


def identity(dim: int) -> Hypervector:
    """Multiplicative identity: the all-ones complex vector."""
    return Hypervector(np.ones(dim, dtype=np.complex128), Backend.FHRR)


def similarity_matrix(y: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Re(<y_i, c_j>) / (|y_i| |c_j|) between rows of y (N, D) and c (k, D)."""
    y128 = np.asarray(y, dtype=np.complex128)
    c128 = np.asarray(c, dtype=np.complex128)
    num = (y128 @ np.conj(c128).T).real
    ny = np.linalg.norm(y128, axis=1)
    nc = np.linalg.norm(c128, axis=1)
    return num / (ny[:, None] * nc[None, :])
