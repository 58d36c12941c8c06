"""Numeric kernels with a compiled core and a pure-Python fallback.

The hot loops (DTW dynamic program, radix-2 FFT) live in a Cython extension
when it compiled at install time; otherwise a numpy implementation with the
same contract takes over. Set ``LINGUA_SPOOF_PURE_PY=1`` to force the
fallback, e.g. for benchmarking one against the other.
"""

from __future__ import annotations

import os

import numpy as np

from . import _purepy

if os.environ.get("LINGUA_SPOOF_PURE_PY"):
    _impl = _purepy
    _BACKEND = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        _BACKEND = "native"
    except ImportError:
        _impl = _purepy
        _BACKEND = "python"


def backend_name() -> str:
    """Which implementation is live: "native" or "python"."""
    return _BACKEND


def fft_frames(frames: np.ndarray) -> np.ndarray:
    """Radix-2 FFT of each row of a (n_frames, n_fft) real array.

    Returns the full complex spectrum, shape (n_frames, n_fft). The frame
    length must be a power of two; zero-pad per frame before calling if not.
    """
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    if frames.ndim != 2:
        raise ValueError("expected a 2-D array of frames")
    n = frames.shape[1]
    if n < 2 or n & (n - 1):
        raise ValueError(f"frame length {n} is not a power of two >= 2")
    return _impl.fft_frames(frames)


def dtw_cost(a: np.ndarray, b: np.ndarray) -> float:
    """Unnormalized DTW alignment cost between two frame sequences.

    Steps {(1,0), (0,1), (1,1)}, Euclidean local cost between rows of the
    (frames, dims) inputs.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise ValueError("inputs must be 2-D with matching feature dimension")
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise ValueError("inputs must contain at least one frame each")
    return _impl.dtw_cost(a, b)
