"""Numpy reference implementations of the hot kernels.

Same contracts as the compiled extension; used when the extension is absent
or explicitly disabled. The FFT is vectorized across frames so the fallback
stays usable on full campaigns, just slower than the native core.
"""

from __future__ import annotations

import numpy as np

_BITREV_CACHE: dict[int, np.ndarray] = {}


def _bit_reversal(n: int) -> np.ndarray:
    perm = _BITREV_CACHE.get(n)
    if perm is None:
        bits = n.bit_length() - 1
        idx = np.arange(n)
        perm = np.zeros(n, dtype=np.intp)
        for b in range(bits):
            perm = (perm << 1) | ((idx >> b) & 1)
        _BITREV_CACHE[n] = perm
    return perm


def fft_frames(frames: np.ndarray) -> np.ndarray:
    n = frames.shape[1]
    x = frames[:, _bit_reversal(n)].astype(np.complex128)
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp((-2j * np.pi / size) * np.arange(half))
        blocks = x.reshape(x.shape[0], n // size, size)
        even = blocks[:, :, :half].copy()
        odd = blocks[:, :, half:] * twiddle
        blocks[:, :, :half] = even + odd
        blocks[:, :, half:] = even - odd
        size *= 2
    return x


def dtw_cost(a: np.ndarray, b: np.ndarray) -> float:
    diff = a[:, None, :] - b[None, :, :]
    cost = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    n, m = cost.shape
    acc = np.empty((n, m))
    acc[0, 0] = cost[0, 0]
    acc[0, 1:] = cost[0, 1:].cumsum() + cost[0, 0]
    acc[1:, 0] = cost[1:, 0].cumsum() + cost[0, 0]
    for i in range(1, n):
        prev = acc[i - 1]
        row = acc[i]
        local = cost[i]
        for j in range(1, m):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if row[j - 1] < best:
                best = row[j - 1]
            row[j] = local[j] + best
    return float(acc[n - 1, m - 1])
