"""QMC rules ``Q_N(f) = N^-1 sum_k f(x_k^T A)`` for integrands with closed-form
integrals over [0, 1]^s, and error tables for reduced vs. unreduced nets."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from rednets.discrepancy import BoundInputs, ProductWeights, weighted_disc_bound
from rednets.errors import BudgetExceededError, ValidationError
from rednets.nets import DigitalNet, GeneratingSet
from rednets.products import fast_product, net_matrix, standard_product
from rednets.quality import min_t, projection_t_map, sequence_t
from rednets.reduction import s_star

__all__ = ["Integrand", "qmc_quadrature", "qmc_reduced", "error_report", "ErrorRow", "write_error_csv"]


@dataclass(frozen=True)
class Integrand:
    """``f(y) = offset + c.y`` (linear) or ``exp(c.y)`` (exponential), y in R^tau."""

    kind: Literal["linear", "exponential"]
    c: tuple[float, ...]
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in ("linear", "exponential"):
            raise ValidationError(f"unknown integrand kind {self.kind!r}")
        c = tuple(float(x) for x in self.c)
        if not all(np.isfinite(c)) or not np.isfinite(self.offset):
            raise ValidationError("integrand coefficients must be finite")
        object.__setattr__(self, "c", c)

    def __call__(self, Y: np.ndarray) -> np.ndarray:
        z = np.asarray(Y, dtype=np.float64) @ np.asarray(self.c)
        if self.kind == "linear":
            return self.offset + z
        return np.exp(z)

    def reference(self, A: np.ndarray) -> float:
        """Exact integral of ``f(x^T A)`` over the unit cube."""
        A = np.asarray(A, dtype=np.float64)
        beta = A @ np.asarray(self.c)
        if self.kind == "linear":
            return float(self.offset + beta.sum() / 2)
        factors = np.ones_like(beta)
        nz = beta != 0
        factors[nz] = np.expm1(beta[nz]) / beta[nz]
        return float(np.prod(factors))


def _check_tau(A, f):
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[1] != len(f.c):
        raise ValidationError(f"A has {A.shape[-1]} columns but f expects {len(f.c)}")
    return A


def qmc_quadrature(P: DigitalNet, A, f: Integrand) -> float:
    """QMC estimate on the points of ``P`` (standard product)."""
    A = _check_tau(A, f)
    if A.shape[0] != P.s:
        raise ValidationError(f"A must have {P.s} rows")
    Y, _ = standard_product(net_matrix(P), A)
    return float(np.mean(f(Y)))


def qmc_reduced(G: GeneratingSet, w, kind: str, A, f: Integrand, backend=None) -> float:
    """QMC estimate on the reduced net, XA computed by the matching fast algorithm."""
    A = _check_tau(A, f)
    algo = {"none": "standard", "row": "row", "column": "column", "column_row": "column_row"}[kind]
    Y, _ = fast_product(G, w, A, algo, force=True, backend=backend)
    return float(np.mean(f(Y)))


@dataclass
class ErrorRow:
    m: int
    N: int
    err_unreduced: float
    err_reduced: float
    disc_bound: float


def error_report(
    make_set: Callable[[int], GeneratingSet],
    w: Callable[[int], Sequence[int]] | Sequence[int],
    kind: str,
    A,
    f: Integrand,
    m_range: Sequence[int],
    weights: ProductWeights | None = None,
    max_exact_t: int = 10,
) -> list[ErrorRow]:
    """Integration errors of the unreduced and reduced rules for each m.

    ``make_set(m)`` builds the generating set and ``w`` is either fixed or a
    function of m. The bound column uses exact per-projection t-values when
    s* is at most ``max_exact_t``, else the global t of the net.
    """
    A = _check_tau(A, f)
    s = A.shape[0]
    weights = weights or ProductWeights(tuple(1.0 / j**2 for j in range(1, s + 1)))
    ref = f.reference(A)
    rows = []
    for m in m_range:
        G = make_set(m)
        wm = tuple(w(m)) if callable(w) else tuple(w)
        q0 = qmc_reduced(G, (0,) * s, "none", A, f)
        q1 = qmc_reduced(G, wm, kind, A, f)
        column = kind in ("column", "column_row")
        ss = s_star(wm, m)
        try:
            if ss <= max_exact_t:
                t_map = projection_t_map(G.subset(range(1, ss + 1)), sequence=column) if ss else 0
            else:
                t_map = sequence_t(G) if column else min_t(G)
            bound = weighted_disc_bound(BoundInputs(G.b, m, wm, weights, t_map), kind if kind != "none" else "row").bound
        except BudgetExceededError:
            bound = float("nan")
        rows.append(ErrorRow(m, G.b**m, abs(q0 - ref), abs(q1 - ref), bound))
    return rows


def write_error_csv(rows: list[ErrorRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["m", "N", "err_unreduced", "err_reduced", "disc_bound"])
    for r in rows:
        wr.writerow([r.m, r.N, repr(r.err_unreduced), repr(r.err_reduced), repr(r.disc_bound)])
    return buf.getvalue()
