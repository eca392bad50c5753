"""Pure-numpy fallback implementations of the hot kernels.

Semantically equivalent to the numba kernels in ``_numba_kernels``; selected
by setting ``HYPERSPACE_DISABLE_NUMBA=1``.
"""

import numpy as np

NAME = "numpy"


def fft(x: np.ndarray) -> np.ndarray:
    """Forward DFT along the last axis (unnormalized, numpy convention)."""
    return np.fft.fft(x, axis=-1)


def ifft(x: np.ndarray) -> np.ndarray:
    """Inverse DFT along the last axis (1/N-normalized)."""
    return np.fft.ifft(x, axis=-1)


def phasor_matrix(exponents: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """exp(1j * exponents[:, None] * phases[None, :]) as complex128."""
    return np.exp(1j * np.multiply.outer(exponents, phases))


def min_dist_to_points(cx: np.ndarray, cy: np.ndarray,
                       px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Exact nearest distance from each (cx, cy) to the point set (px, py).

    Chunked so the broadcast buffer stays small for 10k-point paths.
    """
    out = np.empty(cx.size, dtype=np.float64)
    chunk = max(1, int(4e6) // max(px.size, 1))
    for start in range(0, cx.size, chunk):
        sl = slice(start, start + chunk)
        d2 = (px[None, :] - cx[sl, None]) ** 2 + (py[None, :] - cy[sl, None]) ** 2
        out[sl] = np.sqrt(d2.min(axis=1))
    return out
