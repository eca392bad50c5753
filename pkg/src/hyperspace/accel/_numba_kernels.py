"""Numba-jitted hot kernels: FFT (radix-2 + Bluestein), phasor encoding, EDT.

The FFT is implemented in-repo so the benchmark is self-contained: an
iterative in-place radix-2 transform for power-of-two lengths and a Bluestein
chirp-z fallback for arbitrary lengths (needed for fidelity runs at D=8096).
Conventions match numpy: forward unnormalized, inverse 1/N.
"""

import warnings

warnings.filterwarnings("ignore", category=UserWarning, module="numba")

import numpy as np
from numba import njit, prange

NAME = "numba"

_TWO_PI = 2.0 * np.pi


@njit(cache=True)
def _fft_pow2_inplace(a, tw):
    """In-place radix-2 FFT; tw holds the n/2 roots exp(-2*pi*i*k/n)."""
    n = a.shape[0]
    # bit-reversal permutation
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp
    length = 2
    while length <= n:
        half = length >> 1
        step = n // length
        for i in range(0, n, length):
            for k in range(half):
                u = a[i + k]
                t = tw[k * step] * a[i + k + half]
                a[i + k] = u + t
                a[i + k + half] = u - t
        length <<= 1


@njit(cache=True)
def _fft_bluestein(x, tw_m):
    """Chirp-z FFT for arbitrary length; tw_m are the roots for length m."""
    n = x.shape[0]
    m = 2 * tw_m.shape[0]
    # chirp with phase reduced mod 2n to keep k*k exact in float64
    w = np.empty(n, dtype=np.complex128)
    for k in range(n):
        ang = -np.pi * float((k * k) % (2 * n)) / n
        w[k] = complex(np.cos(ang), np.sin(ang))
    a = np.zeros(m, dtype=np.complex128)
    b = np.zeros(m, dtype=np.complex128)
    for k in range(n):
        a[k] = x[k] * w[k]
        b[k] = np.conj(w[k])
    for k in range(1, n):
        b[m - k] = np.conj(w[k])
    _fft_pow2_inplace(a, tw_m)
    _fft_pow2_inplace(b, tw_m)
    for k in range(m):
        a[k] = a[k] * b[k]
    # inverse pow2 FFT via conjugation
    for k in range(m):
        a[k] = np.conj(a[k])
    _fft_pow2_inplace(a, tw_m)
    out = np.empty(n, dtype=np.complex128)
    inv_m = 1.0 / m
    for k in range(n):
        out[k] = np.conj(a[k]) * inv_m * w[k]
    return out


@njit(cache=True, parallel=True)
def _fft2d_inplace(a, tw, pow2):
    if pow2:
        for i in prange(a.shape[0]):
            _fft_pow2_inplace(a[i], tw)
    else:
        for i in prange(a.shape[0]):
            a[i] = _fft_bluestein(a[i], tw)


@njit(cache=True, parallel=True)
def _conj_scale_inplace(a, s):
    for i in prange(a.shape[0]):
        for j in range(a.shape[1]):
            a[i, j] = np.conj(a[i, j]) * s


_TW_CACHE: dict = {}


def _plan(n: int):
    """(is_power_of_two, twiddle table) for transform length n."""
    pow2 = n & (n - 1) == 0
    length = n
    if not pow2:
        length = 1
        while length < 2 * n - 1:
            length <<= 1
    tw = _TW_CACHE.get(length)
    if tw is None:
        tw = np.exp(-2j * np.pi * np.arange(length // 2) / length)
        tw.flags.writeable = False
        _TW_CACHE[length] = tw
    return pow2, tw


def _fft1(x: np.ndarray) -> np.ndarray:
    pow2, tw = _plan(x.shape[0])
    if pow2:
        a = x.astype(np.complex128)
        _fft_pow2_inplace(a, tw)
        return a
    return _fft_bluestein(x.astype(np.complex128), tw)


def fft(x: np.ndarray) -> np.ndarray:
    if x.ndim == 1:
        return _fft1(np.ascontiguousarray(x, dtype=np.complex128))
    if x.ndim == 2:
        pow2, tw = _plan(x.shape[1])
        a = np.array(x, dtype=np.complex128)  # fresh copy, transformed in place
        _fft2d_inplace(a, tw, pow2)
        return a
    raise ValueError("fft kernel supports 1-D or 2-D inputs")


def ifft(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    if x.ndim == 1:
        a = _fft1(np.conj(np.ascontiguousarray(x, dtype=np.complex128)))
        return np.conj(a) / n
    if x.ndim == 2:
        pow2, tw = _plan(n)
        a = np.conj(x).astype(np.complex128)
        _fft2d_inplace(a, tw, pow2)
        _conj_scale_inplace(a, 1.0 / n)
        return a
    raise ValueError("ifft kernel supports 1-D or 2-D inputs")


@njit(cache=True, parallel=True)
def _phasor_matrix(exponents, phases):
    n = exponents.shape[0]
    d = phases.shape[0]
    out = np.empty((n, d), dtype=np.complex128)
    for i in prange(n):
        e = exponents[i]
        for j in range(d):
            ang = e * phases[j]
            out[i, j] = complex(np.cos(ang), np.sin(ang))
    return out


def phasor_matrix(exponents: np.ndarray, phases: np.ndarray) -> np.ndarray:
    return _phasor_matrix(np.ascontiguousarray(exponents, dtype=np.float64),
                          np.ascontiguousarray(phases, dtype=np.float64))


@njit(cache=True, parallel=True)
def _min_dist(cx, cy, px, py):
    out = np.empty(cx.shape[0], dtype=np.float64)
    for i in prange(cx.shape[0]):
        best = np.inf
        for j in range(px.shape[0]):
            dx = px[j] - cx[i]
            dy = py[j] - cy[i]
            d2 = dx * dx + dy * dy
            if d2 < best:
                best = d2
        out[i] = np.sqrt(best)
    return out


def min_dist_to_points(cx: np.ndarray, cy: np.ndarray,
                       px: np.ndarray, py: np.ndarray) -> np.ndarray:
    return _min_dist(np.ascontiguousarray(cx, dtype=np.float64),
                     np.ascontiguousarray(cy, dtype=np.float64),
                     np.ascontiguousarray(px, dtype=np.float64),
                     np.ascontiguousarray(py, dtype=np.float64))
