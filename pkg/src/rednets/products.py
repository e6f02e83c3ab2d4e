"""The product ``XA`` of a (reduced) net's point matrix with a real s x tau matrix.

``XA = xi_1 a_1 + ... + xi_s a_s`` (columns of X times rows of A). Reduction
makes each column ``xi_j`` repetitive, and the three fast algorithms exploit
that:

* row reduced: ``xi_j`` takes only ``b**(m - w_j)`` distinct values, so the
  multiples of ``a_j`` are tabulated once and looked up per point;
* column reduced: ``xi_j`` is ``b**w_j`` stacked copies of its first
  ``b**(m - w_j)`` entries, so partial sums are formed on the short blocks and
  tiled up coordinate by coordinate;
* column-row reduced: as column reduced, but points are generated from the
  top-left ``(m - w_j)`` block only.

Each function returns the product and an :class:`OpCounts` record that
follows the sequential loop structure, independent of the backend.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from rednets import kernels
from rednets.errors import ValidationError
from rednets.nets import MAX_POINTS, DigitalNet, GeneratingSet
from rednets.reduction import _require_sequence, s_star, validate_indices

__all__ = [
    "OpCounts",
    "CostPrediction",
    "ALGORITHMS",
    "net_matrix",
    "standard_product",
    "row_reduced_product",
    "column_reduced_product",
    "column_row_reduced_product",
    "column_accumulator",
    "fast_product",
    "theoretical_costs",
]

ALGORITHMS = ("standard", "row", "column", "column_row")


@dataclass(frozen=True)
class OpCounts:
    scalar_mults: int = 0
    scalar_adds: int = 0
    table_lookups: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CostPrediction:
    """Operation counts predicted by the O(.) formulas, constant 1."""

    algorithm: str
    generation: int
    product: int

    @property
    def total(self) -> int:
        return self.generation + self.product

    def as_dict(self) -> dict:
        return {**asdict(self), "total": self.total}


def _as_A(A, s):
    A = np.asarray(A)
    if A.dtype != object:
        A = np.ascontiguousarray(A, dtype=np.float64)
        if not np.all(np.isfinite(A)):
            raise ValidationError("A must have finite entries")
    if A.ndim != 2 or A.shape[0] != s:
        raise ValidationError(f"A must have shape ({s}, tau), got {A.shape}")
    return A


def net_matrix(P: DigitalNet, exact: bool = False) -> np.ndarray:
    """Point matrix X (N x s); ``exact`` gives Fractions in an object array."""
    if exact:
        from fractions import Fraction

        den = P.denominator
        return np.array(
            [[Fraction(int(v), den) for v in row] for row in P.numerators], dtype=object
        )
    return P.points()


def standard_product(X, A, backend=None) -> tuple[np.ndarray, OpCounts]:
    """Plain (k, j, l) triple loop."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValidationError("X must be 2-D")
    A = _as_A(A, X.shape[1])
    N, s, tau = X.shape[0], X.shape[1], A.shape[1]
    if A.dtype == object or X.dtype == object:
        out = kernels._fallback.standard_product(X.astype(object), A.astype(object))
    else:
        be = kernels.get_backend(backend)
        out = be.standard_product(np.ascontiguousarray(X, dtype=np.float64), A)
    return out, OpCounts(N * s * tau, N * s * tau, 0)


def _prepare(G: GeneratingSet, w, A):
    if not isinstance(G, GeneratingSet):
        raise ValidationError("expected a GeneratingSet")
    w = validate_indices(w, G.s)
    if G.b**G.m > MAX_POINTS:
        raise ValidationError(f"b**m exceeds the point limit {MAX_POINTS}")
    A = _as_A(A, G.s)
    # indices beyond s* never reach the kernels; clamp keeps the exponents small
    wk = np.array([min(x, G.m) for x in w], dtype=np.int64)
    return w, A, wk, s_star(w, G.m)


def _backend_for(A, backend):
    return kernels._fallback if A.dtype == object else kernels.get_backend(backend)


def row_reduced_product(G: GeneratingSet, w, A, backend=None) -> tuple[np.ndarray, OpCounts]:
    """XA for the net of ``row_reduce(G, w)`` via per-coordinate lookup tables."""
    w, A, wk, ss = _prepare(G, w, A)
    b, m, tau = G.b, G.m, A.shape[1]
    N = b**m
    out = _backend_for(A, backend).row_product(G.stacked, b, m, wk, ss, A)
    table_rows = sum(b ** (m - w[j]) for j in range(ss))
    return out, OpCounts(table_rows * tau, ss * N * tau, ss * N)


def column_accumulator(G, w, A, square=False, backend=None) -> np.ndarray:
    """Partial sums before the final tiling: ``b**(m - min(w_1, m))`` rows."""
    w, A, wk, ss = _prepare(G, w, A)
    return _backend_for(A, backend).column_accumulate(G.stacked, G.b, G.m, wk, ss, A, square)


def _column_common(G, w, A, square, force, backend):
    _require_sequence(G, force)
    w, A, wk, ss = _prepare(G, w, A)
    b, m, tau = G.b, G.m, A.shape[1]
    S = _backend_for(A, backend).column_accumulate(G.stacked, b, m, wk, ss, A, square)
    out = np.tile(S, (b ** int(wk[0]), 1))
    work = sum(b ** (m - w[j]) for j in range(ss)) * tau
    return out, OpCounts(work, work, 0)


def column_reduced_product(
    G: GeneratingSet, w, A, force: bool = False, backend=None
) -> tuple[np.ndarray, OpCounts]:
    """XA for the net of ``column_reduce(G, w)``.

    Starting from ``X_{s*} a_{s*}`` the accumulator is tiled by
    ``b**(w_{j+1} - w_j)`` and ``X_j a_j`` added, for j = s*-1 down to 1,
    then tiled ``b**w_1`` times to the full ``b**m`` rows.
    """
    return _column_common(G, w, A, False, force, backend)


def column_row_reduced_product(
    G: GeneratingSet, w, A, force: bool = False, backend=None
) -> tuple[np.ndarray, OpCounts]:
    """As :func:`column_reduced_product` for ``column_row_reduce(G, w)``;
    points come from the top-left ``(m - w_j)`` block of each matrix."""
    return _column_common(G, w, A, True, force, backend)


def fast_product(G, w, A, algorithm, force=False, backend=None):
    """Dispatch by name. ``standard`` multiplies the unreduced net's points."""
    if algorithm == "standard":
        from rednets.nets import generate_net

        P = generate_net(G, backend=backend)
        return standard_product(net_matrix(P, exact=np.asarray(A).dtype == object), A, backend)
    if algorithm == "row":
        return row_reduced_product(G, w, A, backend=backend)
    if algorithm == "column":
        return column_reduced_product(G, w, A, force=force, backend=backend)
    if algorithm == "column_row":
        return column_row_reduced_product(G, w, A, force=force, backend=backend)
    raise ValidationError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def theoretical_costs(b: int, m: int, s: int, tau: int, w, algorithm: str) -> CostPrediction:
    """Evaluate the expressions inside the O(.) cost statements exactly.

    standard:   generation s b^m m^2,                 product N s tau
    row:        generation sum_{j<=s*} b^m m (m-w_j), product sum b^(m-w_j) tau
    column:     generation sum b^(m-w_j) m (m-w_j),   product sum b^(m-w_j) tau
    column_row: generation sum b^(m-w_j) (m-w_j)^2,   product sum b^(m-w_j) tau
    """
    N = b**m
    if algorithm == "standard":
        return CostPrediction(algorithm, s * N * m * m, N * s * tau)
    w = validate_indices(w, s)
    ks = [m - w[j] for j in range(s_star(w, m))]
    product = sum(b**k for k in ks) * tau
    if algorithm == "row":
        gen = sum(N * m * k for k in ks)
    elif algorithm == "column":
        gen = sum(b**k * m * k for k in ks)
    elif algorithm == "column_row":
        gen = sum(b**k * k * k for k in ks)
    else:
        raise ValidationError(f"unknown algorithm {algorithm!r}")
    return CostPrediction(algorithm, gen, product)
