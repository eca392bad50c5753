"""Abstract-operation accounting for pipeline stages."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class OpCounts:
    """Counts of abstract VSA operations charged by a pipeline stage."""

    encode: int = 0
    bind: int = 0
    bundle: int = 0
    similarity: int = 0
    invert: int = 0
    normalize: int = 0
    weight: int = 0
    softmax: int = 0

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(**{f.name: getattr(self, f.name) + getattr(other, f.name)
                           for f in fields(self)})

    def total(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
