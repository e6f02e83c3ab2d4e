"""Weighted star discrepancy: the upper bound for reduced nets and exact
small-instance values to check it against.

The bound is the maximum of three terms: subsets reaching past s* (whose
points are zero there), singletons, and subsets of [s*] with at least two
elements. Coefficients and powers of b are kept as Fractions; each term is
converted to float once.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

from rednets.errors import BudgetExceededError, ValidationError
from rednets.nets import DigitalNet
from rednets.reduction import s_star, validate_indices

__all__ = [
    "ProductWeights",
    "BoundInputs",
    "DiscBound",
    "a_coeff",
    "term1_bound",
    "weighted_disc_bound",
    "local_discrepancy",
    "exact_star_discrepancy",
    "star_discrepancy_of",
    "exact_weighted_star_discrepancy",
    "parse_weights",
]


@dataclass(frozen=True)
class ProductWeights:
    """Positive, non-increasing coordinate weights; ``gamma_u = prod gamma_j``."""

    gamma: tuple[float, ...]

    def __post_init__(self):
        g = tuple(float(x) for x in self.gamma)
        if not g or any(not np.isfinite(x) or x <= 0 for x in g):
            raise ValidationError("weights must be positive and finite")
        if any(a < b for a, b in zip(g, g[1:])):
            raise ValidationError("weights must be non-increasing")
        object.__setattr__(self, "gamma", g)

    def __len__(self):
        return len(self.gamma)

    def exact(self, j: int) -> Fraction:
        """gamma_j (1-based) as an exact Fraction of its float value."""
        return Fraction(self.gamma[j - 1])

    def of(self, u: Iterable[int]) -> Fraction:
        out = Fraction(1)
        for j in u:
            out *= self.exact(j)
        return out


def parse_weights(text: str, s: int) -> ProductWeights:
    """``j^-2`` style power schedules, ``0.5^j`` geometric ones, or a comma list."""
    text = text.replace(" ", "")
    if text.startswith("gamma="):
        text = text[len("gamma=") :]
    mpow = re.fullmatch(r"j\^(-?[0-9.]+)", text)
    if mpow:
        p = float(mpow.group(1))
        return ProductWeights(tuple(j**p for j in range(1, s + 1)))
    mgeo = re.fullmatch(r"([0-9.]+)\^j", text)
    if mgeo:
        r = float(mgeo.group(1))
        return ProductWeights(tuple(r**j for j in range(1, s + 1)))
    try:
        vals = tuple(float(x) for x in text.split(",") if x)
    except ValueError:
        raise ValidationError(f"cannot parse weights {text!r}") from None
    if len(vals) != s:
        raise ValidationError(f"need {s} weights, got {len(vals)}")
    return ProductWeights(vals)


@dataclass(frozen=True)
class BoundInputs:
    """Inputs of the bound. ``t_map`` holds t_u of the original net per
    frozenset of 1-based coordinates, or is a single global t used for every u."""

    b: int
    m: int
    w: tuple[int, ...]
    weights: ProductWeights
    t_map: Mapping[frozenset, int] | int = 0

    def __post_init__(self):
        w = validate_indices(self.w)
        object.__setattr__(self, "w", w)
        if len(self.weights) != len(w):
            raise ValidationError("weights and reduction indices differ in length")
        if isinstance(self.t_map, int):
            if not 0 <= self.t_map <= self.m:
                raise ValidationError("need 0 <= t <= m")
        elif any(not 0 <= t <= self.m for t in self.t_map.values()):
            raise ValidationError("every t_u must lie in [0, m]")

    @property
    def s(self) -> int:
        return len(self.w)

    def t_of(self, u: Iterable[int]) -> int:
        if isinstance(self.t_map, int):
            return min(self.t_map, self.m)
        key = frozenset(u)
        try:
            return self.t_map[key]
        except KeyError:
            raise ValidationError(f"t_map has no entry for u={sorted(key)}") from None


def _a2(b: int) -> tuple[Fraction, Fraction]:
    if b % 2 == 0:
        return Fraction(b + 8, 4), Fraction(b * b, 4 * (b + 1))
    return Fraction(b + 4, 2), Fraction(b - 1, 4)


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def a_coeff(v: int, b: int, u_size: int) -> Fraction:
    """Coefficient ``a_{v,b}^{(|u|)}`` of ``m**v`` in the per-projection bound."""
    if u_size < 2 or not 0 <= v <= u_size - 1:
        raise ValidationError(f"need u_size >= 2 and 0 <= v <= u_size - 1, got v={v}, |u|={u_size}")
    a0, a1 = _a2(b)
    n = u_size - 2
    half = Fraction(b + 2, 2)
    out = Fraction(0)
    c = _binom(n, v)
    if c:
        out += c * half ** (n - v) * Fraction((b - 1) ** v, 2**v * factorial(v)) * (a0 + u_size**2 - 4)
    c = _binom(n, v - 1)
    if c:
        out += (
            c
            * half ** (u_size - 1 - v)
            * Fraction((b - 1) ** (v - 1), 2 ** (v - 1) * factorial(v))
            * a1
        )
    return out


def _poly_sum(b: int, u_size: int, m: int) -> Fraction:
    return sum((a_coeff(v, b, u_size) * m**v for v in range(u_size)), Fraction(0))


def term1_bound(inputs: BoundInputs) -> tuple[Fraction, tuple[int, ...]] | None:
    """Max of ``b**-m prod_{j in u} gamma_j (1 + b**w_j)`` over non-empty u
    not contained in [s*]; ``None`` when s* = s (no such u)."""
    b, m, s = inputs.b, inputs.m, inputs.s
    ss = s_star(inputs.w, m)
    if ss == s:
        return None
    f = {j: inputs.weights.exact(j) * (1 + b ** inputs.w[j - 1]) for j in range(1, s + 1)}
    big = [j for j in range(1, s + 1) if f[j] > 1]
    if not any(j > ss for j in big):
        extra = max(range(ss + 1, s + 1), key=lambda j: f[j])
        big = sorted(big + [extra])
    val = Fraction(1)
    for j in big:
        val *= f[j]
    return val / b**m, tuple(big)


@dataclass
class DiscBound:
    term1: float | None
    term2: float | None
    term3: float | None
    bound: float
    argmax_subset: tuple[int, ...]
    exact: Fraction = field(repr=False, default=Fraction(0))

    def as_dict(self) -> dict:
        return {
            "term1": self.term1,
            "term2": self.term2,
            "term3": self.term3,
            "bound": self.bound,
            "argmax_subset": list(self.argmax_subset),
        }


def _t_reduced(inputs: BoundInputs, u: Sequence[int], kind: str) -> int:
    wu = inputs.w[max(u) - 1]
    t_u = inputs.t_of(u)
    if kind == "row":
        return min(inputs.m, max(wu, t_u))
    if kind in ("column", "column_row"):
        return min(inputs.m, wu + t_u)
    raise ValidationError(f"unknown reduction kind {kind!r}")


def weighted_disc_bound(
    inputs: BoundInputs,
    kind: str = "row",
    subsets: Iterable[Sequence[int]] | None = None,
    max_s_star: int = 15,
) -> DiscBound:
    """Upper bound on the weighted star discrepancy of the reduced net.

    Every term uses ``T_u``, the bound on the reduced projection's t-value:
    ``min{m, max{w_ubar, t_u}}`` for row reduction and ``min{m, w_ubar + t_u}``
    for the column kinds. ``subsets`` replaces the full enumeration of the
    |u| >= 2 subsets of [s*], which is refused beyond ``max_s_star``.
    """
    b, m = inputs.b, inputs.m
    ss = s_star(inputs.w, m)
    scale = Fraction(1, b**m)
    best = (Fraction(-1), ())

    t1 = term1_bound(inputs)
    if t1 is not None:
        best = max(best, t1, key=lambda p: p[0])

    t2 = None
    for j in range(1, ss + 1):
        val = inputs.weights.exact(j) * b ** _t_reduced(inputs, (j,), kind) * scale
        if t2 is None or val > t2[0]:
            t2 = (val, (j,))
    if t2 is not None:
        best = max(best, t2, key=lambda p: p[0])

    if subsets is None:
        if ss > max_s_star:
            raise BudgetExceededError(
                f"s* = {ss} exceeds {max_s_star}; pass an explicit subset family"
            )
        subsets = (
            u for r in range(2, ss + 1) for u in itertools.combinations(range(1, ss + 1), r)
        )
    t3 = None
    poly = {}
    for u in subsets:
        u = tuple(sorted(u))
        if len(u) < 2 or max(u) > ss:
            continue
        if len(u) not in poly:
            poly[len(u)] = _poly_sum(b, len(u), m)
        val = inputs.weights.of(u) * b ** _t_reduced(inputs, u, kind) * scale * poly[len(u)]
        if t3 is None or val > t3[0]:
            t3 = (val, u)
    if t3 is not None:
        best = max(best, t3, key=lambda p: p[0])

    def fl(p):
        return None if p is None else float(p[0])

    return DiscBound(fl(t1), fl(t2), fl(t3), float(best[0]), best[1], best[0])


def local_discrepancy(P: DigitalNet, u: Sequence[int], x: Sequence[float]) -> float:
    """``#{k : x_{k,j} < x_j for j in u} / N - prod_{j in u} x_j``."""
    u = list(u)
    x = np.asarray(x, dtype=np.float64)
    if len(u) != len(x) or not u:
        raise ValidationError("u and x must be non-empty and of equal length")
    if np.any(x <= 0) or np.any(x > 1):
        raise ValidationError("x must lie in (0, 1]")
    pts = P.points()[:, [j - 1 for j in u]]
    inside = np.all(pts < x[None, :], axis=1)
    return float(inside.sum() / P.N - np.prod(x))


def exact_star_discrepancy(
    P: DigitalNet, u: Sequence[int], max_points: int = 256, max_dim: int = 3
) -> Fraction:
    """Exact ``sup_x |local discrepancy|`` of the projection of ``P`` onto ``u``."""
    u = list(u)
    if not 1 <= len(u) <= max_dim:
        raise BudgetExceededError(f"exact star discrepancy limited to 1 <= |u| <= {max_dim}")
    if P.N > max_points:
        raise BudgetExceededError(f"exact star discrepancy limited to N <= {max_points}")
    return star_discrepancy_of(P.numerators[:, [j - 1 for j in u]], P.denominator)


def star_discrepancy_of(numerators, denominator: int) -> Fraction:
    """Exact star discrepancy of the points ``numerators / denominator``.

    Takes the sup of |local discrepancy| over (0, 1]^d with limits included.
    With grid ``{x_{k,j}} u {1}`` per coordinate, the sup is the largest of
    ``closed_count(z)/N - vol(z)`` (boxes shrinking onto a corner z from
    above) and ``vol(g) - strict_count(g)/N`` (boxes growing to a corner g
    from below) over all grid corners. Counts come from a cumulative
    histogram, one slice of the first axis at a time.
    """
    nums = np.asarray(numerators, dtype=np.int64)
    if nums.ndim == 1:
        nums = nums[:, None]
    N, d = nums.shape
    D = int(denominator)
    if N == 0 or D < 1 or nums.min() < 0 or nums.max() >= D:
        raise ValidationError("need at least one point with 0 <= numerator < denominator")
    grids, index = [], []
    for c in range(d):
        g = np.unique(np.append(nums[:, c], D))
        grids.append(g)
        index.append(np.searchsorted(g, nums[:, c]))
    shape = tuple(len(g) for g in grids)
    H = np.zeros(shape, dtype=np.int64)
    np.add.at(H, tuple(index), 1)

    # everything scaled by N * D**d so the comparison is in integers
    count_scale = D**d
    rest_vol = np.array(N, dtype=object)
    for c in range(1, d):
        rest_vol = np.multiply.outer(rest_vol, grids[c].astype(object))

    best = 0
    running = np.zeros(shape[1:], dtype=np.int64)
    prev = np.zeros(shape[1:], dtype=np.int64)
    for i0 in range(shape[0]):
        sl = H[i0]
        for ax in range(sl.ndim):
            sl = np.cumsum(sl, axis=ax)
        running = running + sl
        vol = rest_vol * int(grids[0][i0])
        closed = running.astype(object) * count_scale
        over = np.max(closed - vol)
        # strict count at corner g is the closed count one grid step lower in every axis
        strict = prev
        for ax in range(strict.ndim):
            pad = np.zeros_like(np.take(strict, [0], axis=ax))
            strict = np.concatenate([pad, np.delete(strict, -1, axis=ax)], axis=ax)
        under = np.max(vol - strict.astype(object) * count_scale)
        best = max(best, int(over), int(under))
        prev = running
    return Fraction(best, N * D**d)


def exact_weighted_star_discrepancy(
    P: DigitalNet, weights: ProductWeights, max_points: int = 256, max_dim: int = 3
) -> Fraction:
    """``max_u gamma_u * exact_star_discrepancy(P, u)`` over non-empty u."""
    if P.s > max_dim:
        raise BudgetExceededError(f"exact weighted discrepancy limited to s <= {max_dim}")
    best = Fraction(0)
    for r in range(1, P.s + 1):
        for u in itertools.combinations(range(1, P.s + 1), r):
            val = weights.of(u) * exact_star_discrepancy(P, u, max_points, max_dim)
            best = max(best, val)
    return best
