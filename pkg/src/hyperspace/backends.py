"""Unified operator surface over the HRR and FHRR backends.

A :class:`BackendOps` bundles the seven abstract operations (encode, bind,
bundle, similarity, invert, normalize, weight) plus batched array variants
used by the pipeline and benchmark. All operations are pure and require
matching backend/dim on their hypervector arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from . import core, fhrr, hrr
from .core import Backend, Hypervector


@dataclass(frozen=True)
class BackendOps:
    backend: Backend
    sample_base: Callable[[np.random.Generator, int], Any]
    encode: Callable[[Any, float], Hypervector]
    encode_many: Callable[[Any, np.ndarray], np.ndarray]
    encode_position_many: Callable[[Sequence, np.ndarray], np.ndarray]
    bind: Callable[[Hypervector, Hypervector], Hypervector]
    bind_arrays: Callable[[np.ndarray, np.ndarray], np.ndarray]
    unbind_arrays: Callable[[np.ndarray, np.ndarray], np.ndarray]
    invert: Callable[[Hypervector], Hypervector]
    invert_arrays: Callable[[np.ndarray], np.ndarray]
    identity: Callable[[int], Hypervector]
    similarity_matrix: Callable[[np.ndarray, np.ndarray], np.ndarray]
    # shared element-wise operations
    bundle = staticmethod(core.bundle)
    normalize = staticmethod(core.normalize)
    weight = staticmethod(core.weight)
    similarity = staticmethod(core.similarity)

    def wrap(self, values: np.ndarray) -> Hypervector:
        return Hypervector(values, self.backend)

    @property
    def bytes_per_element(self) -> int:
        return 8 if self.backend is Backend.FHRR else 4


HRR_OPS = BackendOps(
    backend=Backend.HRR,
    sample_base=hrr.sample_base,
    encode=hrr.encode,
    encode_many=hrr.encode_many,
    encode_position_many=hrr.encode_position_many,
    bind=hrr.bind,
    bind_arrays=hrr.bind_arrays,
    unbind_arrays=hrr.unbind_arrays,
    invert=hrr.invert,
    invert_arrays=hrr.invert_arrays,
    identity=hrr.identity,
    similarity_matrix=hrr.similarity_matrix,
)

FHRR_OPS = BackendOps(
    backend=Backend.FHRR,
    sample_base=fhrr.sample_base,
    encode=fhrr.encode,
    encode_many=fhrr.encode_many,
    encode_position_many=fhrr.encode_position_many,
    bind=fhrr.bind,
    bind_arrays=fhrr.bind_arrays,
    unbind_arrays=fhrr.unbind_arrays,
    invert=fhrr.invert,
    invert_arrays=fhrr.invert_arrays,
    identity=fhrr.identity,
    similarity_matrix=fhrr.similarity_matrix,
)

_REGISTRY = {Backend.HRR: HRR_OPS, Backend.FHRR: FHRR_OPS}


def get_ops(backend: Backend | str) -> BackendOps:
    if isinstance(backend, str):
        backend = Backend[backend.upper()]
    return _REGISTRY[backend]
