"""Holographic Reduced Representations backend.

Real-valued vectors; fractional power encoding and binding go through the
FFT, inversion conjugates the spectrum. Bases are unitary (unit-modulus DFT
coefficients with conjugate symmetry) so conjugate inversion is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import accel
from .core import Backend, Hypervector, check_match
from .errors import NonFinite

_IMAG_RESIDUE_TOL = 1e-6


@dataclass(frozen=True)
class HrrBase:
    """Unitary base vector, stored as its (conjugate-antisymmetric) spectrum phases."""

    dim: int
    spectrum_phases: np.ndarray  # float64, length dim

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("HRR base requires dim >= 2")
        ph = np.asarray(self.spectrum_phases, dtype=np.float64)
        if ph.shape != (self.dim,):
            raise ValueError("spectrum phase array must have length dim")
        ph.flags.writeable = False
        object.__setattr__(self, "spectrum_phases", ph)

    def vector(self) -> Hypervector:
        """Time-domain base = IFFT(exp(i*phases)); equals encode(base, 1)."""
        return encode(self, 1.0)


def sample_base(rng: np.random.Generator, dim: int) -> HrrBase:
    """Draw free-bin phases uniform on [-pi, pi), mirrored conjugate-symmetrically.

    Bin 0 (and the Nyquist bin for even dim) is fixed to +1 so the spectrum is
    conjugate-symmetric and the time-domain base is real.
    """
    if dim < 2:
        raise ValueError("HRR base requires dim >= 2")
    phases = np.zeros(dim, dtype=np.float64)
    n_free = (dim - 1) // 2
    free = rng.uniform(-np.pi, np.pi, n_free)
    phases[1:1 + n_free] = free
    phases[dim - n_free:] = -free[::-1]
    base = HrrBase(dim, phases)
    residue = float(np.abs(accel.ifft(np.exp(1j * phases)).imag).max())
    if residue >= 1e-9:
        raise AssertionError(f"base imaginary residue {residue} >= 1e-9")
    return base


def _to_real(spec_time: np.ndarray, tol: float) -> np.ndarray:
    residue = float(np.abs(spec_time.imag).max())
    if residue >= tol:
        raise AssertionError(f"imaginary residue {residue} exceeds {tol}")
    return spec_time.real


def encode(base: HrrBase, x: float) -> Hypervector:
    """Fractional power encoding: IFFT of the base spectrum raised to x.

    Unit phasors are exponentiated by multiplying their principal phase by x.
    """
    x = float(x)
    if not np.isfinite(x):
        raise NonFinite(f"encoding exponent is not finite: {x}")
    spec = np.exp(1j * base.spectrum_phases * x)
    vals = _to_real(accel.ifft(spec), _IMAG_RESIDUE_TOL)
    return Hypervector(vals, Backend.HRR)


def encode_many(base: HrrBase, xs: np.ndarray) -> np.ndarray:
    """Batched fractional power encoding; returns an (N, D) float64 array."""
    xs = np.asarray(xs, dtype=np.float64)
    if not np.all(np.isfinite(xs)):
        raise NonFinite("encoding exponents contain NaN/Inf")
    spec = accel.phasor_matrix(xs, base.spectrum_phases)
    return _to_real(accel.ifft(spec), _IMAG_RESIDUE_TOL)


def encode_position_many(bases, exps: np.ndarray) -> np.ndarray:
    """Bind per-axis fractional powers, fused in the spectral domain.

    bind(encode(b0, x0), encode(b1, x1), ...) has spectrum equal to the
    element-wise product of the per-axis phasor spectra, so one inverse
    transform per sample suffices.
    """
    exps = np.atleast_2d(np.asarray(exps, dtype=np.float64))
    spec = accel.phasor_matrix(exps[:, 0], bases[0].spectrum_phases)
    for j in range(1, exps.shape[1]):
        spec *= accel.phasor_matrix(exps[:, j], bases[j].spectrum_phases)
    return _to_real(accel.ifft(spec), _IMAG_RESIDUE_TOL)


def unbind_arrays(m: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """bind(invert(pos_i), m) for every row, fused: one forward and one
    inverse transform per row plus one forward transform of m."""
    fm = accel.fft(np.asarray(m, dtype=np.float64))
    fp = accel.fft(np.asarray(pos, dtype=np.float64))
    return accel.ifft(np.conj(fp) * fm[None, :]).real


def bind(a: Hypervector, b: Hypervector) -> Hypervector:
    """Circular convolution via FFT."""
    check_match(a, b)
    out = bind_arrays(a.values[None, :], b.values[None, :])[0]
    return Hypervector(out, Backend.HRR)


def bind_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise circular convolution of real-valued row arrays (broadcastable)."""
    fa = accel.fft(np.asarray(a, dtype=np.float64))
    fb = accel.fft(np.asarray(b, dtype=np.float64))
    return accel.ifft(fa * fb).real


def invert(a: Hypervector) -> Hypervector:
    """Spectral conjugate: IFFT(conj(FFT(a)))."""
    return Hypervector(invert_arrays(a.values[None, :])[0], Backend.HRR)


def invert_arrays(a: np.ndarray) -> np.ndarray:
    fa = accel.fft(np.asarray(a, dtype=np.float64))
    return accel.ifft(np.conj(fa)).real


def identity(dim: int) -> Hypervector:
    """Convolution identity: the delta vector [1, 0, ..., 0]."""
    vals = np.zeros(dim, dtype=np.float64)
    vals[0] = 1.0
    return Hypervector(vals, Backend.HRR)


def similarity_matrix(y: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Normalized correlations between rows of y (N, D) and rows of c (k, D)."""
    y64 = np.asarray(y, dtype=np.float64)
    c64 = np.asarray(c, dtype=np.float64)
    num = y64 @ c64.T
    ny = np.linalg.norm(y64, axis=1)
    nc = np.linalg.norm(c64, axis=1)
    return num / (ny[:, None] * nc[None, :])
