"""Kernel dispatch: numba-jitted hot loops with a pure-numpy fallback.

Set ``HYPERSPACE_DISABLE_NUMBA=1`` in the environment to force the numpy
path. The active path is reported by :func:`kernel_backend`. Both paths
implement the same contracts and are cross-checked in the test suite;
``benchmarks/compare_accel.py`` times them against each other.
"""

import os

_DISABLE = os.environ.get("HYPERSPACE_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

if not _DISABLE:
    try:
        from . import _numba_kernels as _impl
    except ImportError:  # numba unavailable
        from . import _numpy_kernels as _impl
else:
    from . import _numpy_kernels as _impl

fft = _impl.fft
ifft = _impl.ifft
phasor_matrix = _impl.phasor_matrix
min_dist_to_points = _impl.min_dist_to_points


def kernel_backend() -> str:
    """Name of the active kernel implementation ('numba' or 'numpy')."""
    return _impl.NAME
