# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

NONE = np.iinfo(np.int64).max
cdef int64_t _NONE = 9223372036854775807


def ray_min(queries, rays, values, double eps):
    cdef const double[:, ::1] Q = np.ascontiguousarray(queries, dtype=np.float64)
    cdef const double[:, ::1] R = np.ascontiguousarray(rays, dtype=np.float64)
    cdef const int64_t[::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t nq = Q.shape[0], nr = R.shape[0], d = Q.shape[1]
    best_arr = np.full(nq, NONE, dtype=np.int64)
    arg_arr = np.full(nq, -1, dtype=np.int64)
    cdef int64_t[::1] best = best_arr
    cdef int64_t[::1] arg = arg_arr
    cdef Py_ssize_t i, k, j
    cdef double g
    cdef int64_t b, ba
    if nr == 0:
        return best_arr, arg_arr
    if R.shape[1] != d:
        raise ValueError("dimension mismatch")
    with nogil:
        for i in range(nq):
            b = _NONE
            ba = -1
            for k in range(nr):
                if v[k] >= b:
                    continue
                g = 0.0
                for j in range(d):
                    g = g + Q[i, j] * R[k, j]
                if g > eps:
                    b = v[k]
                    ba = k
            best[i] = b
            arg[i] = ba
    return best_arr, arg_arr


def halfspace_counts(points, counts, normals, double eps):
    cdef const double[:, ::1] P = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] U = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const int64_t[::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0], nk = U.shape[0], d = P.shape[1]
    pos_arr = np.zeros(nk, dtype=np.int64)
    zero_arr = np.zeros((nk, n), dtype=np.uint8)
    cdef int64_t[::1] pos = pos_arr
    cdef uint8_t[:, ::1] zero = zero_arr
    cdef Py_ssize_t k, i, j
    cdef double g
    cdef int64_t s
    with nogil:
        for k in range(nk):
            s = 0
            for i in range(n):
                g = 0.0
                for j in range(d):
                    g = g + U[k, j] * P[i, j]
                if g > eps:
                    s = s + c[i]
                elif fabs(g) <= eps:
                    zero[k, i] = 1
            pos[k] = s
    return pos_arr, zero_arr


def range_min(W, lo, length):
    cdef const int64_t[::1] w = np.ascontiguousarray(W, dtype=np.int64)
    cdef const int64_t[::1] l0 = np.ascontiguousarray(lo, dtype=np.int64)
    cdef const int64_t[::1] ln = np.ascontiguousarray(length, dtype=np.int64)
    cdef Py_ssize_t K = w.shape[0], nq = l0.shape[0]
    out_arr = np.empty(nq, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    if nq == 0:
        return out_arr
    cdef Py_ssize_t levels = 1
    while (1 << levels) <= K:
        levels += 1
    table_arr = np.empty((levels, 2 * K), dtype=np.int64)
    cdef int64_t[:, ::1] t = table_arr
    cdef Py_ssize_t i, j, span, a, b, lv
    cdef int64_t x, y, L
    with nogil:
        for i in range(2 * K):
            t[0, i] = w[i % K]
        for j in range(1, levels):
            span = 1 << (j - 1)
            for i in range(2 * K - (1 << j) + 1):
                x = t[j - 1, i]
                y = t[j - 1, i + span]
                t[j, i] = x if x < y else y
        for i in range(nq):
            L = ln[i]
            if L < 1:
                L = 1
            lv = 0
            while (1 << (lv + 1)) <= L and lv + 1 < levels:
                lv += 1
            a = l0[i] % K
            if a < 0:
                a = a + K
            b = a + L - (1 << lv)
            x = t[lv, a]
            y = t[lv, b]
            out[i] = x if x < y else y
    return out_arr
