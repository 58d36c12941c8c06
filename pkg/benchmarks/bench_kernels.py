"""Compare the compiled kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py
Set LINGUA_SPOOF_PURE_PY=1 before importing to force the fallback package-wide;
this script instead times both implementations side by side in one process.
"""

from __future__ import annotations

import time

import numpy as np

from lingua_spoof._kernels import _purepy, backend_name

try:
    from lingua_spoof._kernels import _native
except ImportError:
    _native = None


def _time(fn, *args, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    rng = np.random.default_rng(7)
    print(f"active backend: {backend_name()}")
    if _native is None:
        print("compiled kernels unavailable; timing the fallback only")

    print("\nFFT over framed audio (rows x n_fft):")
    for rows, n_fft in ((32, 1024), (128, 1024), (512, 2048)):
        frames = np.ascontiguousarray(rng.standard_normal((rows, n_fft)))
        t_pure = _time(_purepy.fft_frames, frames)
        line = f"  {rows:4d} x {n_fft:4d}  pure {t_pure * 1e3:8.2f} ms"
        if _native is not None:
            t_nat = _time(_native.fft_frames, frames)
            line += f"  native {t_nat * 1e3:8.2f} ms  speedup {t_pure / t_nat:5.1f}x"
        print(line)

    print("\nDTW over mel sequences (frames x frames, 80 bands):")
    for n, m in ((64, 64), (128, 128), (256, 256)):
        a = np.ascontiguousarray(rng.standard_normal((n, 80)))
        b = np.ascontiguousarray(rng.standard_normal((m, 80)))
        t_pure = _time(_purepy.dtw_cost, a, b)
        line = f"  {n:4d} x {m:4d}  pure {t_pure * 1e3:8.2f} ms"
        if _native is not None:
            t_nat = _time(_native.dtw_cost, a, b)
            line += f"  native {t_nat * 1e3:8.2f} ms  speedup {t_pure / t_nat:5.1f}x"
            assert abs(_native.dtw_cost(a, b) - _purepy.dtw_cost(a, b)) < 1e-9
        print(line)


if __name__ == "__main__":
    main()
