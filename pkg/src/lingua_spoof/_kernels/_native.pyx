# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: DTW dynamic program and radix-2 FFT.

Mirrors the contracts of ``_purepy``; input validation happens in the
package-level wrappers, so inputs here are contiguous float64 of valid shape.
"""

import numpy as np

from libc.math cimport sqrt


def dtw_cost(double[:, ::1] a, double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, diff, best, up, left, diag

    prev_np = np.empty(m, dtype=np.float64)
    row_np = np.empty(m, dtype=np.float64)
    cdef double[::1] prev = prev_np
    cdef double[::1] row = row_np

    for j in range(m):
        s = 0.0
        for k in range(d):
            diff = a[0, k] - b[j, k]
            s += diff * diff
        s = sqrt(s)
        prev[j] = s if j == 0 else prev[j - 1] + s

    for i in range(1, n):
        for j in range(m):
            s = 0.0
            for k in range(d):
                diff = a[i, k] - b[j, k]
                s += diff * diff
            s = sqrt(s)
            if j == 0:
                row[0] = prev[0] + s
                continue
            best = prev[j - 1]
            up = prev[j]
            left = row[j - 1]
            if up < best:
                best = up
            if left < best:
                best = left
            row[j] = s + best
        prev, row = row, prev

    return prev[m - 1]


def fft_frames(double[:, ::1] frames):
    cdef Py_ssize_t rows = frames.shape[0]
    cdef Py_ssize_t n = frames.shape[1]
    cdef Py_ssize_t r, i, j, size, half, stride, start, k, idx_a, idx_b
    cdef double tw_re, tw_im, are, aim, bre, bim

    # Bit-reversal permutation and a master twiddle table exp(-2*pi*i*j/n).
    perm_np = np.zeros(n, dtype=np.intp)
    idx_np = np.arange(n)
    for b in range(int(np.log2(n))):
        perm_np = (perm_np << 1) | ((idx_np >> b) & 1)
    table = np.exp((-2j * np.pi / n) * np.arange(n // 2))
    table_re_np = np.ascontiguousarray(table.real)
    table_im_np = np.ascontiguousarray(table.imag)

    out = np.empty((rows, n), dtype=np.complex128)
    re_np = np.empty(n, dtype=np.float64)
    im_np = np.empty(n, dtype=np.float64)

    cdef Py_ssize_t[::1] perm = perm_np
    cdef double[::1] table_re = table_re_np
    cdef double[::1] table_im = table_im_np
    cdef double[::1] re = re_np
    cdef double[::1] im = im_np

    for r in range(rows):
        for i in range(n):
            re[i] = frames[r, perm[i]]
            im[i] = 0.0
        size = 2
        while size <= n:
            half = size >> 1
            stride = n // size
            for start in range(0, n, size):
                for k in range(half):
                    tw_re = table_re[k * stride]
                    tw_im = table_im[k * stride]
                    idx_a = start + k
                    idx_b = idx_a + half
                    bre = re[idx_b] * tw_re - im[idx_b] * tw_im
                    bim = re[idx_b] * tw_im + im[idx_b] * tw_re
                    are = re[idx_a]
                    aim = im[idx_a]
                    re[idx_a] = are + bre
                    im[idx_a] = aim + bim
                    re[idx_b] = are - bre
                    im[idx_b] = aim - bim
            size <<= 1
        for i in range(n):
            out[r, i] = complex(re[i], im[i])

    return out
