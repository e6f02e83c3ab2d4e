"""Pure numpy versions of the compiled kernels.

Same signatures and the same per-entry summation order as ``_kernels.pyx``,
so float results agree bit for bit. When ``A`` has ``object`` dtype the
points are built as :class:`fractions.Fraction` and every product is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

NAME = "python"


def coord_values(C, b, n_rows, n_cols, n_points):
    """Digit values of ``C[:n_rows, :n_cols] k`` read as a base-b integer, k < n_points."""
    C = np.asarray(C, dtype=np.int64)
    ks = np.arange(n_points, dtype=np.int64)
    if n_rows == 0 or n_cols == 0:
        return np.zeros(n_points, dtype=np.int64)
    powers = b ** np.arange(n_cols, dtype=np.int64)
    digits = (ks[:, None] // powers[None, :]) % b
    y = (digits @ C[:n_rows, :n_cols].T) % b
    weights = b ** np.arange(n_rows - 1, -1, -1, dtype=np.int64)
    return y @ weights


def _scaled(vals, den, exact):
    if exact:
        return np.array([Fraction(int(v), den) for v in vals], dtype=object)
    return vals.astype(np.float64) / float(den)


def standard_product(X, A):
    X = np.asarray(X)
    A = np.asarray(A)
    out = np.zeros((X.shape[0], A.shape[1]), dtype=A.dtype)
    for j in range(X.shape[1]):
        out += X[:, j : j + 1] * A[j][None, :]
    return out


def row_product(Cs, b, m, w, s_star, A):
    A = np.asarray(A)
    exact = A.dtype == object
    N = b**m
    out = np.zeros((N, A.shape[1]), dtype=A.dtype)
    for j in range(s_star):
        n_rows = m - int(w[j])
        T = b**n_rows
        table = _scaled(np.arange(T), T, exact)[:, None] * A[j][None, :]
        idx = coord_values(Cs[j], b, n_rows, m, N)
        out += table[idx]
    return out


def column_accumulate(Cs, b, m, w, s_star, A, square):
    A = np.asarray(A)
    exact = A.dtype == object
    tau = A.shape[1]
    if s_star == 0:
        return np.zeros((b ** (m - min(int(w[0]), m)), tau), dtype=A.dtype)
    j = s_star - 1
    R = b ** (m - int(w[j]))
    S = np.zeros((R, tau), dtype=A.dtype)
    while True:
        n_cols = m - int(w[j])
        n_rows = n_cols if square else m
        x = _scaled(coord_values(Cs[j], b, n_rows, n_cols, R), b**n_rows, exact)
        S += x[:, None] * A[j][None, :]
        if j == 0:
            return S
        f = b ** (int(w[j]) - int(w[j - 1]))
        S = np.tile(S, (f, 1))
        R *= f
        j -= 1
