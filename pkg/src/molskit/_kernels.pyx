# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; pure-Python twin in molskit._kernels_py."""

from libc.stdint cimport int32_t, int64_t

import numpy as np


def latin_violation(grid):
    """First Latin violation in row-major scan order, or None."""
    cdef const int32_t[:, ::1] g = grid
    cdef Py_ssize_t n = g.shape[0]
    cdef int64_t[::1] col_first = np.full(n * n, -1, dtype=np.int64)
    cdef int64_t[::1] row_first = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t r, c, s, prev
    for r in range(n):
        row_first[:] = -1
        for c in range(n):
            s = g[r, c]
            prev = row_first[s]
            if prev >= 0:
                return ("row", r, s, (r, prev), (r, c))
            row_first[s] = c
            prev = col_first[c * n + s]
            if prev >= 0:
                return ("col", c, s, (prev, c), (r, c))
            col_first[c * n + s] = r
    return None


def orth_violation(a, b):
    """First duplicated superposition pair, or None."""
    cdef const int32_t[:, ::1] ga = a
    cdef const int32_t[:, ::1] gb = b
    cdef Py_ssize_t n = ga.shape[0]
    cdef int64_t[::1] seen = np.full(n * n, -1, dtype=np.int64)
    cdef Py_ssize_t r, c, i, p, first
    i = 0
    for r in range(n):
        for c in range(n):
            p = ga[r, c] * n + gb[r, c]
            first = seen[p]
            if first >= 0:
                return (first, i)
            seen[p] = i
            i += 1
    return None


def fill_square_embed(base, mols):
    """Cell fill for the one-square embedding construction."""
    cdef const int32_t[:, ::1] L = base
    cdef const int32_t[:, :, ::1] F = mols
    cdef Py_ssize_t n = L.shape[0]
    cdef Py_ssize_t t = F.shape[0]
    cdef Py_ssize_t big = n * n
    host_arr = np.empty((big, big), dtype=np.int32)
    mates_arr = np.empty((t, big, big), dtype=np.int32)
    cdef int32_t[:, ::1] host = host_arr
    cdef int32_t[:, :, ::1] mates = mates_arr
    cdef Py_ssize_t p, r, q, c, k, row, f1pr, f1pq
    for p in range(n):
        for r in range(n):
            f1pr = F[0, p, r]
            row = p * n + r
            for q in range(n):
                f1pq = F[0, p, q]
                for c in range(n):
                    host[row, q * n + c] = f1pq * n + L[f1pr, c]
            for k in range(t):
                for q in range(n):
                    f1pq = F[0, p, q]
                    for c in range(n):
                        mates[k, row, q * n + c] = F[k, f1pr, q] * n + F[k, f1pq, c]
    return host_arr, mates_arr


def fill_pair_embed(a1, a2, d1, d2, cset, fmap):
    """Cell fill for the pair embedding construction."""
    cdef const int32_t[:, ::1] A1 = a1
    cdef const int32_t[:, ::1] A2 = a2
    cdef const int32_t[:, ::1] D1 = d1
    cdef const int32_t[:, ::1] D2 = d2
    cdef const int32_t[:, :, ::1] C = cset
    cdef int64_t[::1] f = np.ascontiguousarray(fmap, dtype=np.int64)
    cdef Py_ssize_t n = A1.shape[0]
    cdef Py_ssize_t t = C.shape[0]
    cdef Py_ssize_t big = n * n
    b1_arr = np.empty((big, big), dtype=np.int32)
    b2_arr = np.empty((big, big), dtype=np.int32)
    mates_arr = np.empty((t, big, big), dtype=np.int32)
    cdef int32_t[:, ::1] B1 = b1_arr
    cdef int32_t[:, ::1] B2 = b2_arr
    cdef int32_t[:, :, ::1] X = mates_arr
    cdef Py_ssize_t p, r, q, c, i, row, fi, d1rc, d2rc
    for p in range(n):
        for r in range(n):
            row = p * n + r
            for q in range(n):
                for c in range(n):
                    B1[row, q * n + c] = A1[p, q] * n + D1[r, c]
                    B2[row, q * n + c] = A2[p, q] * n + D2[r, c]
            for i in range(t):
                fi = f[i]
                for q in range(n):
                    for c in range(n):
                        d1rc = D1[r, c]
                        d2rc = D2[r, c]
                        X[i, row, q * n + c] = C[i, p, d1rc] * n + C[fi, q, d2rc]
    return b1_arr, b2_arr, mates_arr
