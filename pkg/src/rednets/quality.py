"""Quality parameters of digital nets and checks of the reduced-net bounds.

``rho`` is the linear independence parameter: the largest d such that for
every split d = d_1 + ... + d_s the first d_j rows of every C_j are jointly
independent over F_b. The minimal t-value of the net is ``m - rho``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from rednets.errors import BudgetExceededError, SequenceRequiredError, ValidationError
from rednets.gf import make_basis, rows_independent
from rednets.nets import DigitalNet, GeneratingSet
from rednets.reduction import (
    column_row_reduce,
    mixed_reduce,
    reduce,
    row_reduce,
    validate_indices,
)

__all__ = [
    "DEFAULT_BUDGET",
    "QualityReport",
    "BoundCheck",
    "ProjectionCheck",
    "compositions",
    "rho",
    "rho_naive",
    "rho_m",
    "min_t",
    "oracle_min_t",
    "projection_t",
    "sequence_t",
    "projection_t_map",
    "quality_report",
    "check_row_reduced_bounds",
    "check_column_row_bounds",
    "check_projection_bounds",
    "check_mixed_bounds",
]

DEFAULT_BUDGET = 10**7


def compositions(d: int, s: int) -> Iterable[tuple[int, ...]]:
    """All (d_1, ..., d_s) of non-negative integers summing to d."""
    if s == 1:
        yield (d,)
        return
    for bars in itertools.combinations(range(d + s - 1), s - 1):
        prev = -1
        parts = []
        for bar in bars:
            parts.append(bar - prev - 1)
            prev = bar
        parts.append(d + s - 2 - prev)
        yield tuple(parts)


def rho(stacked: np.ndarray, b: int, budget: int = DEFAULT_BUDGET) -> int:
    """Linear independence parameter of an ``(s, m, m)`` stack of matrices.

    Depth-first search over the parts d_j with an incrementally maintained
    echelon basis. Adding rows can only turn an independent system dependent,
    so the search keeps the smallest total of a dependent system and prunes
    every branch that cannot beat it. ``budget`` bounds the number of search
    nodes.
    """
    stacked = np.asarray(stacked)
    s, m = stacked.shape[0], stacked.shape[1]
    basis, convert = make_basis(b, packed=(b == 2))
    rows = [[convert(r) for r in stacked[j].tolist()] for j in range(s)]
    best = m + 1
    nodes = 0

    def dfs(j: int, total: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(
                f"too large for exact rho: more than {budget} search nodes (s={s}, m={m})"
            )
        added = 0
        last = j == s - 1
        while True:
            if not last:
                dfs(j + 1, total)
            if total + 1 >= best or added == m:
                break
            if basis.add(rows[j][added]):
                added += 1
                total += 1
            else:
                best = total + 1
                break
        for _ in range(added):
            basis.pop()

    dfs(0, 0)
    return best - 1


def rho_naive(stacked: np.ndarray, b: int, budget: int = DEFAULT_BUDGET) -> int:
    """Reference ``rho``: ascending d, every composition checked from scratch."""
    stacked = np.asarray(stacked)
    s, m = stacked.shape[0], stacked.shape[1]
    for d in range(1, m + 1):
        if comb(d + s - 1, s - 1) > budget:
            raise BudgetExceededError(f"too large for exact rho at d={d}")
        for parts in compositions(d, s):
            system = [stacked[j, i].tolist() for j, dj in enumerate(parts) for i in range(dj)]
            if not rows_independent(system, b):
                return d - 1
    return m


def rho_m(G: GeneratingSet, budget: int = DEFAULT_BUDGET) -> int:
    return rho(G.stacked, G.b, budget)


def min_t(G: GeneratingSet, budget: int = DEFAULT_BUDGET) -> int:
    """Minimal quality parameter of the net generated by ``G``."""
    return G.m - rho_m(G, budget)


def oracle_min_t(P: DigitalNet, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest t for which every elementary interval of volume b**(t-m)
    holds exactly b**t points, found by counting points per box."""
    b, m, s = P.b, P.m, P.s
    nums = P.numerators
    work = 0
    for t in range(m + 1):
        d = m - t
        ok = True
        for parts in compositions(d, s):
            work += P.N
            if work > budget * 10:
                raise BudgetExceededError("too large for the box-counting oracle")
            cell = np.zeros(P.N, dtype=np.int64)
            for j, dj in enumerate(parts):
                cell = cell * b**dj + nums[:, j] // b ** (m - dj)
            counts = np.bincount(cell, minlength=b**d)
            if not np.all(counts == b**t):
                ok = False
                break
        if ok:
            return t
    raise AssertionError("every b**m point set is a (m, m, s)-net")


def projection_t(G: GeneratingSet, u: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """Minimal t of the projection onto the 1-based coordinates ``u``."""
    return min_t(G.subset(u), budget)


def sequence_t(G: GeneratingSet, budget: int = DEFAULT_BUDGET) -> int:
    """t-value of the sequence prefix: ``max_{m' <= m} (m' - rho_{m'})`` over
    the upper-left sections. For a (0, s)-sequence construction this is 0."""
    return max(mp - rho(G.stacked[:, :mp, :mp], G.b, budget) for mp in range(1, G.m + 1))


def _subsets(s: int):
    for r in range(1, s + 1):
        yield from itertools.combinations(range(1, s + 1), r)


def projection_t_map(
    G: GeneratingSet,
    subsets: Iterable[Sequence[int]] | None = None,
    sequence: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> dict[frozenset, int]:
    """t_u for every requested subset (all non-empty subsets by default)."""
    f = sequence_t if sequence else min_t
    subsets = _subsets(G.s) if subsets is None else subsets
    return {frozenset(u): f(G.subset(sorted(u)), budget) for u in subsets}


@dataclass
class QualityReport:
    rho: int
    t_min: int
    is_strict_certified: bool
    per_projection: dict[frozenset, int] | None = None


def quality_report(
    G: GeneratingSet, projections: bool = False, budget: int = DEFAULT_BUDGET
) -> QualityReport:
    r = rho_m(G, budget)
    per = projection_t_map(G, budget=budget) if projections else None
    # t = m - rho is the minimal t, so the net is strict for it
    return QualityReport(r, G.m - r, True, per)


@dataclass
class BoundCheck:
    kind: str
    m: int
    t: int
    rho: int
    rho_reduced: int
    t_reduced: int
    lower: int
    upper: int
    t_upper: int
    passed: bool
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def check_row_reduced_bounds(G: GeneratingSet, w, budget: int = DEFAULT_BUDGET) -> BoundCheck:
    """Row reduced bound ``max{0, m - max{t, w_s}} <= rho~ <= max{0, m - w_s}``
    and ``t~ <= min{m, max{t, w_s}}``, plus the two degenerate branches."""
    w = validate_indices(w, G.s)
    m, ws = G.m, w[-1]
    rho0 = rho_m(G, budget)
    t = m - rho0
    Gr = row_reduce(G, w)
    rr = rho_m(Gr, budget)
    notes = {}
    extra = True
    if ws >= m:
        notes["branch"] = "w_s >= m"
        extra = rr == 0
    elif ws <= t:
        notes["branch"] = "w_s <= t"
        extra = rr == rho0
    lower = max(0, m - max(t, ws))
    upper = max(0, m - ws)
    t_upper = min(m, max(t, ws))
    passed = bool(lower <= rr <= upper and m - rr <= t_upper and extra)
    return BoundCheck("row", m, t, rho0, rr, m - rr, lower, upper, t_upper, passed, notes)


def _sequence_t_or_raise(G: GeneratingSet, force: bool, budget: int) -> int:
    if not G.from_sequence and not force:
        raise SequenceRequiredError(
            "column-type bounds hold for matrices derived from a digital sequence"
        )
    return sequence_t(G, budget)


def check_column_row_bounds(
    G: GeneratingSet, w, force: bool = False, budget: int = DEFAULT_BUDGET
) -> BoundCheck:
    """Column-row bound ``max{0, m - w_s - t} <= rho~ <= max{0, m - w_s}``,
    ``t~ <= min{m, w_s + t}`` with t the t-value of the sequence prefix.

    When that t equals the net's minimal t the net is strict for it and the
    sharper ``rho~ <= max{0, m - max{t, w_s}}`` is checked too.
    """
    w = validate_indices(w, G.s)
    m, ws = G.m, w[-1]
    t = _sequence_t_or_raise(G, force, budget)
    rho0 = rho_m(G, budget)
    Gr = column_row_reduce(G, w, force=force)
    rr = rho_m(Gr, budget)
    notes = {"strict_applies": t == m - rho0}
    extra = True
    if t == m - rho0:
        strict_upper = max(0, m - max(t, ws))
        notes["strict_upper"] = strict_upper
        extra = rr <= strict_upper
    lower = max(0, m - ws - t)
    upper = max(0, m - ws)
    t_upper = min(m, ws + t)
    passed = bool(lower <= rr <= upper and m - rr <= t_upper and extra)
    return BoundCheck("column_row", m, t, rho0, rr, m - rr, lower, upper, t_upper, passed, notes)


def check_mixed_bounds(
    G: GeneratingSet, w_rows, w_cols, force: bool = False, budget: int = DEFAULT_BUDGET
) -> BoundCheck:
    """Mixed bound ``max{0, m - max{w^c_s + t, w^r_s}} <= rho~
    <= max{0, m - max{w^c_s, w^r_s}}`` and ``t~ <= min{m, max{w^c_s + t, w^r_s}}``."""
    w_rows = validate_indices(w_rows, G.s)
    w_cols = validate_indices(w_cols, G.s)
    m, wr, wc = G.m, w_rows[-1], w_cols[-1]
    rho0 = rho_m(G, budget)
    if any(w_cols):
        t = _sequence_t_or_raise(G, force, budget)
    else:
        t = m - rho0
    Gr = mixed_reduce(G, w_rows, w_cols, force=force)
    rr = rho_m(Gr, budget)
    lower = max(0, m - max(wc + t, wr))
    upper = max(0, m - max(wc, wr))
    t_upper = min(m, max(wc + t, wr))
    passed = bool(lower <= rr <= upper and m - rr <= t_upper)
    return BoundCheck("mixed", m, t, rho0, rr, m - rr, lower, upper, t_upper, passed)


@dataclass
class ProjectionCheck:
    u: tuple[int, ...]
    t_u: int
    rho_reduced: int
    t_reduced: int
    lower: int
    upper: int
    t_upper: int
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def check_projection_bounds(
    G: GeneratingSet,
    w,
    kind: str = "row",
    max_s: int = 10,
    force: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> list[ProjectionCheck]:
    """Bounds for every non-empty projection u of the reduced net.

    Row kind: ``max{0, m - max{w_ubar, t_u}} <= rho~_u <= max{0, m - w_ubar}``
    and ``t~_u <= min{m, max{w_ubar, t_u}}``. Column kinds replace the max by
    ``w_ubar + t_u`` with t_u the sequence t-value of the projection.
    """
    w = validate_indices(w, G.s)
    if G.s > max_s:
        raise BudgetExceededError(f"s={G.s} exceeds the projection limit {max_s}")
    if kind not in ("row", "column", "column_row"):
        raise ValidationError(f"unknown reduction kind {kind!r}")
    column = kind != "row"
    if column and not G.from_sequence and not force:
        raise SequenceRequiredError("column-type projection bounds need sequence matrices")
    Gr = reduce(G, w, kind, force=force)
    m = G.m
    out = []
    for u in _subsets(G.s):
        wu = w[max(u) - 1]
        sub = G.subset(u)
        t_u = sequence_t(sub, budget) if column else min_t(sub, budget)
        rr = rho_m(Gr.subset(u), budget)
        if column:
            lower, t_upper = max(0, m - wu - t_u), min(m, wu + t_u)
        else:
            lower, t_upper = max(0, m - max(wu, t_u)), min(m, max(wu, t_u))
        upper = max(0, m - wu)
        passed = bool(lower <= rr <= upper and m - rr <= t_upper)
        out.append(ProjectionCheck(u, t_u, rr, m - rr, lower, upper, t_upper, passed))
    return out
