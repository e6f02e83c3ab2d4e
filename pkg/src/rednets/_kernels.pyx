# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``rednets._fallback`` function for function."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

NAME = "compiled"


cdef inline int64_t _ipow(int64_t b, int e) noexcept nogil:
    cdef int64_t r = 1
    while e > 0:
        r *= b
        e -= 1
    return r


cdef void _coord_values(const int64_t[:, :] C, int64_t b, int n_rows, int n_cols,
                        int64_t n_points, int64_t[::1] out) noexcept nogil:
    cdef int64_t digits[64]
    cdef int64_t k, q, v, acc
    cdef int i, r
    for k in range(n_points):
        q = k
        for r in range(n_cols):
            digits[r] = q % b
            q = q // b
        v = 0
        for i in range(n_rows):
            acc = 0
            for r in range(n_cols):
                acc += C[i, r] * digits[r]
            v = v * b + acc % b
        out[k] = v


def coord_values(const int64_t[:, :] C, int64_t b, int n_rows, int n_cols, int64_t n_points):
    """Digit values of ``C[:n_rows, :n_cols] k`` read as a base-b integer, k < n_points."""
    if n_cols > 64:
        raise ValueError("at most 64 digit columns supported")
    out = np.empty(n_points, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        _coord_values(C, b, n_rows, n_cols, n_points, o)
    return out


def standard_product(const double[:, ::1] X, const double[:, ::1] A):
    """Triple loop over (k, j, l); entries accumulate in ascending j."""
    cdef Py_ssize_t N = X.shape[0], s = X.shape[1], tau = A.shape[1]
    cdef Py_ssize_t k, j, l
    cdef double x
    out = np.zeros((N, tau), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for k in range(N):
            for j in range(s):
                x = X[k, j]
                for l in range(tau):
                    o[k, l] += x * A[j, l]
    return out


def row_product(const int64_t[:, :, :] Cs, int64_t b, int m, const int64_t[::1] w,
                int s_star, const double[:, ::1] A):
    """Row reduced XA: per coordinate a table of multiples of a_j, then lookups."""
    cdef Py_ssize_t tau = A.shape[1]
    cdef int64_t N = _ipow(b, m)
    cdef int64_t T, k, t
    cdef int j, n_rows
    cdef Py_ssize_t l
    cdef double x
    out = np.zeros((N, tau), dtype=np.float64)
    cdef double[:, ::1] o = out
    idx_arr = np.empty(N, dtype=np.int64)
    cdef int64_t[::1] idx = idx_arr
    cdef double[:, ::1] table
    for j in range(s_star):
        n_rows = m - <int>w[j]
        T = _ipow(b, n_rows)
        table_arr = np.empty((T, tau), dtype=np.float64)
        table = table_arr
        with nogil:
            for k in range(T):
                x = <double>k / <double>T
                for l in range(tau):
                    table[k, l] = x * A[j, l]
            _coord_values(Cs[j], b, n_rows, m, N, idx)
            for k in range(N):
                t = idx[k]
                for l in range(tau):
                    o[k, l] += table[t, l]
    return out


def column_accumulate(const int64_t[:, :, :] Cs, int64_t b, int m, const int64_t[::1] w,
                      int s_star, const double[:, ::1] A, bint square):
    """Column reduced XA before the final tiling: b**(m - w_1) rows.

    ``square`` restricts point generation to the top-left (m - w_j) block,
    which is the column-row reduced variant.
    """
    cdef Py_ssize_t tau = A.shape[1]
    cdef int64_t R, R_new, f, k, q, den
    cdef int j, n_cols, n_rows
    cdef Py_ssize_t l
    cdef double x
    cdef double[:, ::1] S
    cdef double[:, ::1] S_new
    if s_star == 0:
        return np.zeros((_ipow(b, m - min(<int>w[0], m)), tau), dtype=np.float64)
    vals_arr = np.empty(_ipow(b, m - <int>w[0]), dtype=np.int64)
    cdef int64_t[::1] vals = vals_arr
    j = s_star - 1
    R = _ipow(b, m - <int>w[j])
    S_arr = np.zeros((R, tau), dtype=np.float64)
    S = S_arr
    while True:
        n_cols = m - <int>w[j]
        n_rows = n_cols if square else m
        den = _ipow(b, n_rows)
        with nogil:
            _coord_values(Cs[j], b, n_rows, n_cols, R, vals)
            for k in range(R):
                x = <double>vals[k] / <double>den
                for l in range(tau):
                    S[k, l] += x * A[j, l]
        if j == 0:
            break
        f = _ipow(b, <int>w[j] - <int>w[j - 1])
        R_new = R * f
        S_new_arr = np.empty((R_new, tau), dtype=np.float64)
        S_new = S_new_arr
        with nogil:
            for q in range(f):
                for k in range(R):
                    for l in range(tau):
                        S_new[q * R + k, l] = S[k, l]
        S_arr = S_new_arr
        S = S_new
        R = R_new
        j -= 1
    return S_arr
