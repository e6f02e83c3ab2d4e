"""Generating sets and the digital nets they define.

Points are kept as exact integer numerators over the common denominator
``b**m``; floats only appear when a net is multiplied with a real matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from rednets import kernels
from rednets.errors import ValidationError
from rednets.gf import GfMatrix, check_prime

__all__ = [
    "GeneratingSet",
    "DigitalNet",
    "digits_of",
    "generate_net",
    "random_generating_set",
    "pascal_matrix_power",
    "pascal_generating_set",
    "pascal_extended_generating_set",
    "MAX_POINTS",
]

MAX_POINTS = 2**26


@dataclass(frozen=True, eq=False)
class GeneratingSet:
    """``s`` square ``m x m`` generating matrices over F_b.

    ``from_sequence`` records that the matrices are upper-left sections of
    infinite matrices of a digital sequence; column-type reductions only carry
    quality guarantees in that case.
    """

    b: int
    m: int
    matrices: tuple[GfMatrix, ...]
    from_sequence: bool = False

    def __post_init__(self):
        b = check_prime(self.b)
        if int(self.m) < 1:
            raise ValidationError(f"m must be >= 1, got {self.m}")
        mats = tuple(self.matrices)
        if not mats:
            raise ValidationError("need at least one generating matrix")
        for C in mats:
            if not isinstance(C, GfMatrix):
                raise ValidationError("matrices must be GfMatrix instances")
            if C.b != b or C.shape != (self.m, self.m):
                raise ValidationError(
                    f"each matrix must be {self.m}x{self.m} over F_{b}, got {C.shape} over F_{C.b}"
                )
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "from_sequence", bool(self.from_sequence))

    @classmethod
    def from_array(cls, b: int, array, from_sequence: bool = False) -> "GeneratingSet":
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValidationError(f"expected an (s, m, m) array, got shape {arr.shape}")
        return cls(b, arr.shape[1], tuple(GfMatrix(b, a) for a in arr), from_sequence)

    @property
    def s(self) -> int:
        return len(self.matrices)

    @cached_property
    def stacked(self) -> np.ndarray:
        """Read-only ``(s, m, m)`` int64 array of all matrices."""
        arr = np.ascontiguousarray(np.stack([C.entries for C in self.matrices]))
        arr.flags.writeable = False
        return arr

    def subset(self, u: Sequence[int]) -> "GeneratingSet":
        """Generating set of the projection onto the 1-based coordinates ``u``."""
        return GeneratingSet(
            self.b, self.m, tuple(self.matrices[j - 1] for j in u), self.from_sequence
        )

    def section(self, m: int) -> "GeneratingSet":
        """Upper-left ``m x m`` sections of every matrix."""
        return GeneratingSet.from_array(self.b, self.stacked[:, :m, :m], self.from_sequence)

    def __eq__(self, other):
        if not isinstance(other, GeneratingSet):
            return NotImplemented
        return (
            self.b == other.b
            and self.m == other.m
            and self.from_sequence == other.from_sequence
            and np.array_equal(self.stacked, other.stacked)
        )

    def __hash__(self):
        return hash((self.b, self.m, self.from_sequence, self.stacked.tobytes()))


@dataclass(frozen=True, eq=False)
class DigitalNet:
    """``b**m`` points with coordinates ``numerators[k, j] / b**m``."""

    b: int
    m: int
    numerators: np.ndarray

    def __post_init__(self):
        arr = np.array(self.numerators, dtype=np.int64, copy=True)
        N = self.b**self.m
        if arr.ndim != 2 or arr.shape[0] != N:
            raise ValidationError(f"need {N} rows of numerators, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= N):
            raise ValidationError("numerators must lie in [0, b**m)")
        arr.flags.writeable = False
        object.__setattr__(self, "numerators", arr)

    @property
    def s(self) -> int:
        return self.numerators.shape[1]

    @property
    def N(self) -> int:
        return self.numerators.shape[0]

    @property
    def denominator(self) -> int:
        return self.b**self.m

    def points(self) -> np.ndarray:
        """Coordinates as float64 (exact for b = 2)."""
        return self.numerators.astype(np.float64) / float(self.denominator)

    def project(self, u: Sequence[int]) -> "DigitalNet":
        return DigitalNet(self.b, self.m, self.numerators[:, [j - 1 for j in u]])


def digits_of(k: int, b: int, m: int) -> tuple[int, ...]:
    """Base-b digits of ``k``, least significant first, padded to length m."""
    if not 0 <= k < b**m:
        raise ValidationError(f"k={k} outside [0, {b}**{m})")
    out = []
    for _ in range(m):
        k, d = divmod(k, b)
        out.append(d)
    return tuple(out)


def generate_net(G: GeneratingSet, backend=None) -> DigitalNet:
    """Point set of the digital net generated by ``G``."""
    N = G.b**G.m
    if N > MAX_POINTS:
        raise ValidationError(f"b**m = {N} exceeds the point limit {MAX_POINTS}")
    be = kernels.get_backend(backend)
    cols = [be.coord_values(G.stacked[j], G.b, G.m, G.m, N) for j in range(G.s)]
    return DigitalNet(G.b, G.m, np.stack(cols, axis=1))


def random_generating_set(b: int, m: int, s: int, seed: int) -> GeneratingSet:
    """I.i.d. uniform entries drawn from numpy's PCG64 seeded with ``seed``."""
    b = check_prime(b)
    rng = np.random.Generator(np.random.PCG64(seed))
    return GeneratingSet.from_array(b, rng.integers(0, b, size=(s, m, m)), False)


def pascal_matrix_power(b: int, m: int, e: int) -> np.ndarray:
    """``P**e mod b`` for the upper triangular Pascal matrix ``P[i, r] = C(r, i)``."""
    out = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for r in range(i, m):
            out[i, r] = comb(r, i) * pow(e, r - i, b) % b
    return out


def pascal_generating_set(b: int, m: int, s: int) -> GeneratingSet:
    """Faure-type matrices ``C_j = P**(j-1) mod b``; a (0, m, s)-net for s <= b."""
    b = check_prime(b)
    if s > b:
        raise ValidationError(f"Pascal construction needs s <= b, got s={s}, b={b}")
    return GeneratingSet.from_array(
        b, np.stack([pascal_matrix_power(b, m, j) for j in range(s)]), True
    )


def pascal_extended_generating_set(b: int, m: int, s: int, seed: int) -> GeneratingSet:
    """Pascal powers for the first ``min(s, b)`` coordinates, random upper
    triangular matrices with nonzero diagonal for the rest.

    Every matrix is the upper-left section of an infinite upper triangular
    matrix, so the set comes from a digital sequence (with a t-value that has
    to be computed, see :func:`rednets.quality.sequence_t`).
    """
    b = check_prime(b)
    rng = np.random.Generator(np.random.PCG64(seed))
    mats = [pascal_matrix_power(b, m, j) for j in range(min(s, b))]
    for _ in range(s - len(mats)):
        M = np.triu(rng.integers(0, b, size=(m, m)))
        M[np.diag_indices(m)] = rng.integers(1, b, size=m)
        mats.append(M)
    return GeneratingSet.from_array(b, np.stack(mats), True)
