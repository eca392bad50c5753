"""Domain types and backend-agnostic vector operations.

A :class:`Hypervector` is an immutable D-dimensional distributed
representation, real (float32) for HRR or complex (complex64) for FHRR.
Element-wise operations that both backends share — weighting, bundling,
normalization, similarity — live here; binding, encoding and inversion are
backend-specific (see :mod:`hyperspace.hrr` / :mod:`hyperspace.fhrr`).
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from .errors import BackendMismatch, DimMismatch, InvalidScalar, NonFinite, ZeroVector

ZERO_NORM_EPS = 1e-12

MAGIC = b"HSV1"
_HEADER = struct.Struct("<4sBI")  # magic, backend tag, dim


class Backend(enum.Enum):
    HRR = 0
    FHRR = 1


# In-memory precision is float64/complex128 so algebraic identities hold to
# 1e-9; the float32/complex64 representation (4D vs 8D payload bytes) is
# realized at the serialization boundary below.
_DTYPES = {Backend.HRR: np.dtype(np.float64), Backend.FHRR: np.dtype(np.complex128)}
_SER_DTYPES = {Backend.HRR: np.dtype("<f4"), Backend.FHRR: np.dtype("<c8")}


@dataclass(frozen=True)
class Hypervector:
    """Immutable hypervector tagged with its backend."""

    values: np.ndarray
    backend: Backend

    def __post_init__(self):
        expected = _DTYPES[self.backend]
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("hypervector must be a non-empty 1-D array")
        if v.dtype != expected:
            v = v.astype(expected)
        else:
            v = v.copy() if not v.flags.owndata else v
        if not np.all(np.isfinite(v.view(np.float64))):
            raise NonFinite("hypervector contains NaN or Inf")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def check_match(a: Hypervector, b: Hypervector) -> None:
    if a.backend is not b.backend:
        raise BackendMismatch(f"{a.backend.name} vs {b.backend.name}")
    if a.dim != b.dim:
        raise DimMismatch(f"dim {a.dim} vs {b.dim}")


def zero(backend: Backend, dim: int) -> Hypervector:
    return Hypervector(np.zeros(dim, dtype=_DTYPES[backend]), backend)


def weight(a: Hypervector, w: float) -> Hypervector:
    """Scale every element of ``a`` by the scalar ``w``."""
    w = float(w)
    if not np.isfinite(w):
        raise InvalidScalar(f"weight scalar is not finite: {w}")
    return Hypervector(a.values * w, a.backend)


def bundle(a: Hypervector, b: Hypervector) -> Hypervector:
    """Element-wise superposition of two hypervectors."""
    check_match(a, b)
    return Hypervector(a.values + b.values, a.backend)


def normalize(a: Hypervector) -> Hypervector:
    """Scale ``a`` to unit Euclidean norm (element moduli for FHRR)."""
    n = a.norm()
    if n < ZERO_NORM_EPS:
        raise ZeroVector("cannot normalize a zero vector")
    return Hypervector(a.values / n, a.backend)


def similarity(a: Hypervector, b: Hypervector) -> float:
    """Normalized inner product in [-1, 1]; real part for FHRR."""
    check_match(a, b)
    na, nb = a.norm(), b.norm()
    if na < ZERO_NORM_EPS or nb < ZERO_NORM_EPS:
        raise ZeroVector("similarity of a zero vector is undefined")
    if a.backend is Backend.FHRR:
        dot = np.vdot(b.values.astype(np.complex128), a.values.astype(np.complex128)).real
    else:
        dot = float(a.values.astype(np.float64) @ b.values.astype(np.float64))
    return float(dot / (na * nb))


def to_bytes(a: Hypervector) -> bytes:
    """Serialize: header {magic 'HSV1', backend u8, dim u32 LE} + payload.

    Payload is dim x 4 bytes for HRR (float32) and dim x 8 bytes for FHRR
    (interleaved float32 real/imag pairs), both little-endian.
    """
    payload = np.ascontiguousarray(a.values.astype(_SER_DTYPES[a.backend])).tobytes()
    return _HEADER.pack(MAGIC, a.backend.value, a.dim) + payload


def from_bytes(buf: bytes) -> Hypervector:
    if len(buf) < _HEADER.size:
        raise ValueError("buffer too short for hypervector header")
    magic, tag, dim = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise ValueError(f"bad magic {magic!r}, expected {MAGIC!r}")
    backend = Backend(tag)
    dtype = _SER_DTYPES[backend]
    expected = _HEADER.size + dim * dtype.itemsize
    if len(buf) != expected:
        raise ValueError(f"buffer length {len(buf)} != expected {expected}")
    values = np.frombuffer(buf, dtype=dtype, count=dim, offset=_HEADER.size)
    return Hypervector(values.astype(_DTYPES[backend]), backend)
