"""Exact linear algebra over the prime field F_b.

Matrices are stored one digit per entry in a read-only ``int64`` array. Base 2
has a bit-packed path (rows as Python ints) that must agree exactly with the
general elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from rednets.errors import ValidationError

__all__ = [
    "GfMatrix",
    "is_prime",
    "check_prime",
    "rank",
    "rank_general",
    "rank_gf2",
    "rows_independent",
    "mat_vec",
    "EchelonBasis",
    "Gf2EchelonBasis",
    "make_basis",
]


def is_prime(n: int) -> bool:
    """Trial division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(b: int) -> int:
    if isinstance(b, bool) or int(b) != b or not is_prime(int(b)):
        raise ValidationError(f"modulus must be prime, got {b!r}")
    return int(b)


@dataclass(frozen=True, eq=False)
class GfMatrix:
    """Dense matrix over F_b with entries in ``{0, ..., b-1}``."""

    b: int
    entries: np.ndarray

    def __post_init__(self):
        b = check_prime(self.b)
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValidationError(f"matrix must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= b):
            raise ValidationError(f"entries must lie in [0, {b - 1}]")
        arr.flags.writeable = False
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, b: int, n: int) -> "GfMatrix":
        return cls(b, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, b: int, rows: int, cols: int) -> "GfMatrix":
        return cls(b, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(e) for e in self.entries[i])

    def transpose(self) -> "GfMatrix":
        return GfMatrix(self.b, self.entries.T)

    def __matmul__(self, other: "GfMatrix") -> "GfMatrix":
        if self.b != other.b or self.cols != other.rows:
            raise ValidationError("incompatible matrices")
        # object dtype keeps intermediate sums exact for large b
        prod = self.entries.astype(object) @ other.entries.astype(object)
        return GfMatrix(self.b, np.asarray(prod % self.b, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.b == other.b and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.b, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"GfMatrix(b={self.b}, [{body}])"


def rank_general(rows: Sequence[Sequence[int]], b: int) -> int:
    """Rank by Gaussian elimination mod b, first nonzero pivot in column order."""
    work = [[int(e) % b for e in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        inv = pow(prow[col], -1, b)
        if inv != 1:
            prow = [(e * inv) % b for e in prow]
            work[rank] = prow
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [(e - f * p) % b for e, p in zip(work[r], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def _pack(row: Iterable[int]) -> int:
    v = 0
    for i, e in enumerate(row):
        if e:
            v |= 1 << i
    return v


def rank_gf2(rows: Sequence[int], ncols: int) -> int:
    """Rank over GF(2) of rows given as bitsets (bit i = column i)."""
    work = list(rows)
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for r in range(rank, len(work)):
            if work[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and work[r] & bit:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def rank(M: GfMatrix) -> int:
    """Rank of ``M`` over F_b."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.b == 2:
        return rank_gf2([_pack(r) for r in M.entries], M.cols)
    return rank_general(M.entries.tolist(), M.b)


def rows_independent(rows: Sequence[Sequence[int]], b: int) -> bool:
    """True iff the row vectors are linearly independent over F_b.

    The empty system is independent.
    """
    b = check_prime(b)
    rows = [list(r) for r in rows]
    if not rows:
        return True
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValidationError("all vectors must have the same length")
    if len(rows) > n:
        return False
    if b == 2:
        return rank_gf2([_pack(r) for r in rows], n) == len(rows)
    return rank_general(rows, b) == len(rows)


def mat_vec(M: GfMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Exact product ``M v`` over F_b."""
    v = [int(e) for e in v]
    if len(v) != M.cols:
        raise ValidationError(f"vector length {len(v)} != matrix cols {M.cols}")
    b = M.b
    return tuple(sum(int(c) * e for c, e in zip(row, v)) % b for row in M.entries)


class EchelonBasis:
    """Incrementally built basis over F_b supporting ``add`` and ``pop``.

    Each stored vector is reduced against its predecessors, so reducing a new
    vector in insertion order clears every pivot. ``pop`` undoes the last
    successful ``add``, which makes the basis usable as a DFS stack.
    """

    def __init__(self, b: int):
        self.b = b
        self._vecs: list[list[int]] = []
        self._pivots: list[int] = []

    def __len__(self):
        return len(self._vecs)

    def add(self, vec: Sequence[int]) -> bool:
        b = self.b
        v = [int(e) % b for e in vec]
        for bv, p in zip(self._vecs, self._pivots):
            f = v[p]
            if f:
                v = [(x - f * y) % b for x, y in zip(v, bv)]
        for p, x in enumerate(v):
            if x:
                inv = pow(x, -1, b)
                self._vecs.append([(e * inv) % b for e in v])
                self._pivots.append(p)
                return True
        return False

    def pop(self) -> None:
        self._vecs.pop()
        self._pivots.pop()


class Gf2EchelonBasis:
    """Bit-packed :class:`EchelonBasis` for b = 2; vectors are ints."""

    b = 2

    def __init__(self):
        self._vecs: list[int] = []
        self._masks: list[int] = []

    def __len__(self):
        return len(self._vecs)

    def add(self, vec: int) -> bool:
        for bv, mask in zip(self._vecs, self._masks):
            if vec & mask:
                vec ^= bv
        if vec:
            self._vecs.append(vec)
            self._masks.append(vec & -vec)
            return True
        return False

    def pop(self) -> None:
        self._vecs.pop()
        self._masks.pop()


def make_basis(b: int, packed: bool):
    """Return an empty basis and a row converter for the chosen representation."""
    if packed:
        if b != 2:
            raise ValidationError("packed representation requires b = 2")
        return Gf2EchelonBasis(), _pack
    return EchelonBasis(b), list
