import numpy as np
import pytest

from hyperspace import Backend, get_ops
from hyperspace.rng import make_rng


@pytest.fixture(params=[Backend.HRR, Backend.FHRR], ids=["hrr", "fhrr"])
def ops(request):
    return get_ops(request.param)


def random_hv(ops, dim, seed=0):
    """A generic nonzero hypervector (not necessarily unit-modulus)."""
    rng = make_rng(seed, 99)
    if ops.backend is Backend.FHRR:
        vals = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    else:
        vals = rng.standard_normal(dim)
    return ops.wrap(vals)


def encoded_hv(ops, dim, x, seed=0):
    base = ops.sample_base(make_rng(seed, 1, 0), dim)
    return ops.encode(base, x)
