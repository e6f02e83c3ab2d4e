"""Flat-file formats: generating sets, net CSV export and dense real matrices."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np

from rednets.errors import ValidationError
from rednets.gf import is_prime
from rednets.nets import DigitalNet, GeneratingSet

__all__ = [
    "format_generating_set",
    "parse_generating_set",
    "format_net_csv",
    "parse_net_csv",
    "exact_decimal",
    "format_matrix_csv",
    "parse_matrix_csv",
]


def format_generating_set(G: GeneratingSet) -> str:
    """Header ``b m s from_sequence`` then m rows of m digits per matrix."""
    lines = [f"{G.b} {G.m} {G.s} {int(G.from_sequence)}"]
    for C in G.matrices:
        lines.extend(" ".join(str(int(e)) for e in row) for row in C.entries)
    return "\n".join(lines) + "\n"


def parse_generating_set(text: str) -> GeneratingSet:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 4:
        raise ValidationError("header must be 'b m s from_sequence'")
    try:
        b, m, s, flag = (int(x) for x in rows[0])
        body = [[int(x) for x in r] for r in rows[1:]]
    except ValueError:
        raise ValidationError("generating set file must contain integers only") from None
    if flag not in (0, 1):
        raise ValidationError("from_sequence flag must be 0 or 1")
    if m < 1 or s < 1:
        raise ValidationError("m and s must be positive")
    if len(body) != s * m or any(len(r) != m for r in body):
        raise ValidationError(f"expected {s * m} rows of {m} digits")
    arr = np.array(body, dtype=np.int64).reshape(s, m, m)
    return GeneratingSet.from_array(b, arr, bool(flag))


def exact_decimal(num: int, b: int, m: int) -> str:
    """``num / b**m`` as a terminating decimal when one exists, else ``p/q``."""
    den = b**m
    if b in (2, 5):
        scaled = num * (10 // b) ** m
        digits = str(scaled).rjust(m + 1, "0")
        whole, frac = digits[:-m], digits[-m:].rstrip("0")
        return f"{whole}.{frac}" if frac else whole
    return str(Fraction(num, den)) if num else "0"


def format_net_csv(P: DigitalNet) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["k"] + [f"x_{j}" for j in range(1, P.s + 1)])
    for k, row in enumerate(P.numerators):
        wr.writerow([k] + [exact_decimal(int(v), P.b, P.m) for v in row])
    return buf.getvalue()


def _prime_power(N: int) -> tuple[int, int]:
    for b in range(2, N + 1):
        if N % b == 0:
            if not is_prime(b):
                break
            m = 0
            while N % b == 0:
                N //= b
                m += 1
            if N == 1:
                return b, m
            break
    raise ValidationError("number of points is not a prime power")


def parse_net_csv(text: str) -> DigitalNet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "k":
        raise ValidationError("net CSV needs a 'k,x_1,...' header")
    body = rows[1:]
    b, m = _prime_power(len(body))
    den = b**m
    nums = []
    for k, r in enumerate(body):
        if int(r[0]) != k:
            raise ValidationError("rows must be in index order")
        vals = [Fraction(x) * den for x in r[1:]]
        if any(v.denominator != 1 for v in vals):
            raise ValidationError("coordinate is not a multiple of 1/b**m")
        nums.append([int(v) for v in vals])
    return DigitalNet(b, m, np.array(nums, dtype=np.int64))


def format_matrix_csv(M: np.ndarray) -> str:
    """Comma separated, no header, ``%.17g`` so floats round-trip exactly."""
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    return "".join(",".join(format(x, ".17g") for x in row) + "\n" for row in M)


def parse_matrix_csv(text: str) -> np.ndarray:
    try:
        rows = [[float(x) for x in ln.split(",")] for ln in text.splitlines() if ln.strip()]
    except ValueError:
        raise ValidationError("matrix CSV must contain numbers only") from None
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("matrix CSV rows must be non-empty and equally long")
    M = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(M)):
        raise ValidationError("matrix entries must be finite")
    return M
