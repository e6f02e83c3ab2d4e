"""Row, column, column-row and mixed reduction of generating sets.

Reduction index ``w_j`` zeroes the last ``min(m, w_j)`` rows and/or columns of
the j-th generating matrix. Indices are stored unclamped because the cost
formulas and the discrepancy bound use the raw values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from rednets.errors import SequenceRequiredError, ValidationError
from rednets.nets import GeneratingSet

__all__ = [
    "ReductionIndices",
    "ReductionWarning",
    "validate_indices",
    "row_reduce",
    "column_reduce",
    "column_row_reduce",
    "mixed_reduce",
    "reduce",
    "s_star",
    "schedule",
    "parse_w",
    "KINDS",
]

Kind = Literal["row", "column", "column_row", "mixed"]
KINDS = ("row", "column", "column_row")


class ReductionWarning(UserWarning):
    """Reduction outside the regime the quality bounds are proven for."""


@dataclass(frozen=True)
class ReductionIndices:
    w: tuple[int, ...]
    kind: Kind = "row"
    w_rows: tuple[int, ...] | None = None
    w_cols: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("row", "column", "column_row", "mixed"):
            raise ValidationError(f"unknown reduction kind {self.kind!r}")
        object.__setattr__(self, "w", validate_indices(self.w))
        if self.kind == "mixed":
            if self.w_rows is None or self.w_cols is None:
                raise ValidationError("mixed reduction needs w_rows and w_cols")
            wr = validate_indices(self.w_rows)
            wc = validate_indices(self.w_cols)
            if len(wr) != len(wc):
                raise ValidationError("w_rows and w_cols differ in length")
            object.__setattr__(self, "w_rows", wr)
            object.__setattr__(self, "w_cols", wc)


def validate_indices(w: Sequence[int], s: int | None = None) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in w)
        if any(not isinstance(x, str) and x != v for x, v in zip(w, vals)):
            raise ValueError
    except (TypeError, ValueError):
        raise ValidationError(f"reduction indices must be integers: {tuple(w)!r}") from None
    w = vals
    if any(x < 0 for x in w):
        raise ValidationError(f"reduction indices must be non-negative: {w}")
    if any(a > b for a, b in zip(w, w[1:])):
        raise ValidationError(f"reduction indices must be non-decreasing: {w}")
    if s is not None and len(w) != s:
        raise ValidationError(f"need {s} reduction indices, got {len(w)}")
    return w


def _check(G: GeneratingSet, w) -> tuple[int, ...]:
    if isinstance(w, ReductionIndices):
        w = w.w
    w = validate_indices(w, G.s)
    if w and w[0] != 0:
        warnings.warn(
            f"w_1 = {w[0]} != 0; the quality bounds assume w_1 = 0", ReductionWarning, stacklevel=3
        )
    return w


def _require_sequence(G: GeneratingSet, force: bool) -> None:
    if G.from_sequence:
        return
    if not force:
        raise SequenceRequiredError(
            "column-type reduction needs matrices derived from a digital sequence "
            "(from_sequence=True); pass force=True to override"
        )
    warnings.warn(
        "column-type reduction of matrices not derived from a sequence; "
        "quality bounds do not apply",
        ReductionWarning,
        stacklevel=3,
    )


def _masked(G: GeneratingSet, w_rows, w_cols) -> GeneratingSet:
    m = G.m
    arr = np.array(G.stacked)
    for j in range(G.s):
        keep_r = m - min(m, w_rows[j])
        keep_c = m - min(m, w_cols[j])
        arr[j, keep_r:, :] = 0
        arr[j, :, keep_c:] = 0
    return GeneratingSet.from_array(G.b, arr, G.from_sequence)


def row_reduce(G: GeneratingSet, w) -> GeneratingSet:
    """Zero the last ``min(m, w_j)`` rows of ``C_j``."""
    w = _check(G, w)
    return _masked(G, w, (0,) * G.s)


def column_reduce(G: GeneratingSet, w, force: bool = False) -> GeneratingSet:
    """Zero the last ``min(m, w_j)`` columns of ``C_j``."""
    w = _check(G, w)
    _require_sequence(G, force)
    return _masked(G, (0,) * G.s, w)


def column_row_reduce(G: GeneratingSet, w, force: bool = False) -> GeneratingSet:
    """Keep only the top-left ``m - min(m, w_j)`` block of ``C_j``."""
    w = _check(G, w)
    _require_sequence(G, force)
    return _masked(G, w, w)


def mixed_reduce(G: GeneratingSet, w_rows, w_cols, force: bool = False) -> GeneratingSet:
    """Independent row and column reduction indices per coordinate."""
    w_rows = _check(G, w_rows)
    w_cols = _check(G, w_cols)
    if any(w_cols):
        _require_sequence(G, force)
    return _masked(G, w_rows, w_cols)


def reduce(G: GeneratingSet, w, kind: str, force: bool = False) -> GeneratingSet:
    if kind == "none":
        return G
    if kind == "row":
        return row_reduce(G, w)
    if kind == "column":
        return column_reduce(G, w, force=force)
    if kind == "column_row":
        return column_row_reduce(G, w, force=force)
    raise ValidationError(f"unknown reduction kind {kind!r}")


def s_star(w, m: int) -> int:
    """Largest 1-based ``j`` with ``w_j < m`` (0 if there is none)."""
    if isinstance(w, ReductionIndices):
        w = w.w
    return sum(1 for x in w if x < m)


def _ilog(j: int, base: int) -> int:
    e = 0
    p = base
    while p <= j:
        p *= base
        e += 1
    return e


def schedule(name: str, s: int, m: int, b: int = 2) -> tuple[int, ...]:
    """Named reduction schedules.

    ``log2``: ``w_j = min(floor(log_b j), m)``;
    ``log2sqrt``: ``w_j = min(floor(log_b sqrt(j)), m)``;
    ``zero``: all zero.
    """
    if name == "log2":
        return tuple(min(_ilog(j, b), m) for j in range(1, s + 1))
    if name == "log2sqrt":
        # floor(log_b(j) / 2) = floor(log_{b^2} j)
        return tuple(min(_ilog(j, b * b), m) for j in range(1, s + 1))
    if name == "zero":
        return (0,) * s
    raise ValidationError(f"unknown schedule {name!r}; expected log2, log2sqrt or zero")


def parse_w(text: str, s: int, m: int, b: int = 2) -> tuple[int, ...]:
    """Explicit comma list or a schedule name."""
    text = text.strip()
    if text and (text[0].isdigit()):
        return validate_indices([t for t in text.split(",") if t.strip()], s)
    return schedule(text, s, m, b)
