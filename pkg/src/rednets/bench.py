"""Wall-clock benchmark of the XA algorithms and a dependency-free SVG chart.

Each measurement covers point generation plus the product, from the
generating matrices to XA, because the fast algorithms save work in both.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from rednets.errors import ValidationError
from rednets.nets import MAX_POINTS, random_generating_set
from rednets.products import ALGORITHMS, fast_product, theoretical_costs
from rednets.reduction import ReductionWarning, parse_w

__all__ = ["BenchConfig", "run_bench", "format_bench_csv", "parse_bench_csv", "svg_chart", "COLUMNS"]

COLUMNS = ["algo", "b", "m", "s", "tau", "schedule", "wall_ns_median", "mults", "adds", "theory"]


@dataclass
class BenchConfig:
    b: int = 2
    m: Sequence[int] = (12,)
    s: Sequence[int] = (50, 200, 800)
    tau: int = 20
    schedule: str = "log2"
    algorithms: Sequence[str] = ALGORITHMS
    repetitions: int = 5
    seed: int = 0
    backend: str | None = None
    max_points: int = field(default=2**20)

    def __post_init__(self):
        if not self.m or not self.s:
            raise ValidationError("m and s ranges must be non-empty")
        if self.repetitions < 1:
            raise ValidationError("repetitions must be >= 1")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValidationError(f"unknown algorithms {bad}")
        if self.b ** max(self.m) > min(self.max_points, MAX_POINTS):
            raise ValidationError(f"b**m = {self.b ** max(self.m)} exceeds the benchmark size guard")


def _time(fn, reps: int) -> int:
    fn()  # warm-up
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples))


def run_bench(config: BenchConfig) -> list[dict]:
    """One row per (m, s, algorithm); sequential, single-threaded."""
    rows = []
    for m in config.m:
        for s in config.s:
            G = random_generating_set(config.b, m, s, config.seed)
            A = np.random.Generator(np.random.PCG64(config.seed)).random((s, config.tau))
            w = parse_w(config.schedule, s, m, config.b)
            for algo in config.algorithms:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", ReductionWarning)

                    def run():
                        return fast_product(G, w, A, algo, force=True, backend=config.backend)

                    _, counts = run()
                    wall = _time(run, config.repetitions)
                theory = theoretical_costs(config.b, m, s, config.tau, w, algo).total
                rows.append(
                    dict(
                        algo=algo,
                        b=config.b,
                        m=m,
                        s=s,
                        tau=config.tau,
                        schedule=config.schedule,
                        wall_ns_median=wall,
                        mults=counts.scalar_mults,
                        adds=counts.scalar_adds,
                        theory=theory,
                    )
                )
    return rows


def format_bench_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    wr.writeheader()
    for r in rows:
        wr.writerow({k: r[k] for k in COLUMNS})
    return buf.getvalue()


def parse_bench_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or set(COLUMNS) - set(rows[0]):
        raise ValidationError(f"bench CSV needs columns {COLUMNS}")
    out = []
    for r in rows:
        d = {k: r[k] for k in COLUMNS}
        for k in ("b", "m", "s", "tau", "wall_ns_median", "mults", "adds", "theory"):
            d[k] = int(d[k])
        out.append(d)
    return out


_COLORS = {
    "standard": "#1f77b4",
    "row": "#d62728",
    "column": "#2ca02c",
    "column_row": "#9467bd",
}
_LABELS = {
    "standard": "standard",
    "row": "row reduced",
    "column": "column reduced",
    "column_row": "row and column reduced",
}


def svg_chart(csv_text: str, width: int = 640, height: int = 420) -> str:
    """Line chart of median wall-clock (log y) against s, or against m when s is fixed."""
    rows = parse_bench_csv(csv_text)
    xkey = "s" if len({r["s"] for r in rows}) > 1 else "m"
    algos = list(dict.fromkeys(r["algo"] for r in rows))
    xs = sorted({r[xkey] for r in rows})
    ys = [max(r["wall_ns_median"], 1) for r in rows]
    lo = math.floor(math.log10(min(ys)))
    hi = math.ceil(math.log10(max(ys)))
    if hi == lo:
        hi += 1
    left, right, top, bottom = 70, 170, 30, 50
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        if len(xs) == 1:
            return left + pw / 2
        return left + pw * (x - xs[0]) / (xs[-1] - xs[0])

    def py(y):
        return top + ph * (hi - math.log10(max(y, 1))) / (hi - lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" style="fill:#ffffff"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" style="stroke:#000000"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" style="stroke:#000000"/>',
    ]
    for e in range(lo, hi + 1):
        y = py(10**e)
        out.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" style="stroke:#dddddd"/>'
        )
        out.append(
            f'<text x="{left - 6}" y="{y + 4:.2f}" style="font:11px sans-serif;text-anchor:end">1e{e}</text>'
        )
    for x in xs:
        out.append(
            f'<text x="{px(x):.2f}" y="{top + ph + 16}" style="font:11px sans-serif;text-anchor:middle">{x}</text>'
        )
    out.append(
        f'<text x="{left + pw / 2:.2f}" y="{height - 12}" style="font:12px sans-serif;text-anchor:middle">{xkey}</text>'
    )
    out.append(
        f'<text x="16" y="{top + ph / 2:.2f}" transform="rotate(-90 16 {top + ph / 2:.2f})" '
        'style="font:12px sans-serif;text-anchor:middle">median wall-clock [ns]</text>'
    )
    for i, algo in enumerate(algos):
        pts = sorted((r[xkey], r["wall_ns_median"]) for r in rows if r["algo"] == algo)
        color = _COLORS.get(algo, "#000000")
        path = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        out.append(f'<polyline points="{path}" style="fill:none;stroke:{color};stroke-width:2"/>')
        for x, y in pts:
            out.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" style="fill:{color}"/>')
        ly = top + 10 + 18 * i
        out.append(
            f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 32}" y2="{ly}" '
            f'style="stroke:{color};stroke-width:2"/>'
        )
        out.append(
            f'<text x="{left + pw + 36}" y="{ly + 4}" style="font:11px sans-serif">{_LABELS.get(algo, algo)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
