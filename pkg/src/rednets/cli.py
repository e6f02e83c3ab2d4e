"""Command-line entry point: ``rednets <subcommand> ...``.

Exit codes: 0 ok, 2 validation, 3 budget, 4 I/O. Failures print a single
``error: <code>: <message>`` line to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import warnings
from pathlib import Path

from rednets.bench import BenchConfig, format_bench_csv, run_bench, svg_chart
from rednets.discrepancy import BoundInputs, parse_weights, weighted_disc_bound
from rednets.errors import BudgetExceededError, RednetsError, ValidationError
from rednets.formats import (
    format_generating_set,
    format_matrix_csv,
    format_net_csv,
    parse_generating_set,
    parse_matrix_csv,
)
from rednets.integrate import Integrand, error_report, write_error_csv
from rednets.nets import (
    generate_net,
    pascal_extended_generating_set,
    pascal_generating_set,
    random_generating_set,
)
from rednets.products import ALGORITHMS, fast_product, theoretical_costs
from rednets.quality import (
    DEFAULT_BUDGET,
    check_column_row_bounds,
    check_projection_bounds,
    check_row_reduced_bounds,
    projection_t_map,
)
from rednets.reduction import KINDS, ReductionWarning, parse_w, reduce, s_star

__all__ = ["main", "build_parser"]

CONSTRUCTIONS = ("random", "pascal", "pascal_extended")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"expected a comma list of integers, got {text!r}") from None


def _range(text: str) -> list[int]:
    """``4:10`` (inclusive) or a comma list."""
    if ":" in text:
        lo, hi = _ints(text.replace(":", ","))
        return list(range(lo, hi + 1))
    return _ints(text)


def _construct(name, b, m, s, seed):
    if name == "random":
        return random_generating_set(b, m, s, seed)
    if name == "pascal":
        return pascal_generating_set(b, m, s)
    if name == "pascal_extended":
        return pascal_extended_generating_set(b, m, s, seed)
    raise ValidationError(f"unknown construction {name!r}")


def _load_set(path):
    return parse_generating_set(_read(path))


def cmd_gen(a):
    G = _construct(a.construction, a.b, a.m, a.s, a.seed)
    _write(a.out, format_generating_set(G))


def cmd_net(a):
    _write(a.out, format_net_csv(generate_net(_load_set(a.file))))


def cmd_reduce(a):
    G = _load_set(a.file)
    w = parse_w(a.w, G.s, G.m, G.b)
    _write(a.out, format_generating_set(reduce(G, w, a.kind, force=a.force)))


def cmd_quality(a):
    G = _load_set(a.file)
    w = parse_w(a.w, G.s, G.m, G.b) if a.w else (0,) * G.s
    if a.kind == "row":
        chk = check_row_reduced_bounds(G, w, a.budget)
    elif a.kind == "column_row":
        chk = check_column_row_bounds(G, w, force=a.force, budget=a.budget)
    else:
        raise ValidationError("quality bounds are available for kinds row and column_row")
    report = {
        "rho": chk.rho_reduced,
        "t": chk.t_reduced,
        "rho_unreduced": chk.rho,
        "t_unreduced": chk.t,
        "kind": a.kind,
        "w": list(w),
        "bounds": {
            "lower": chk.lower,
            "upper": chk.upper,
            "t_upper": chk.t_upper,
            "pass": chk.passed,
        },
        "per_projection": [],
    }
    if a.projections:
        for p in check_projection_bounds(G, w, a.kind, force=a.force, budget=a.budget):
            report["per_projection"].append(
                {"u": list(p.u), "t_u": p.t_reduced, "bound": p.t_upper, "pass": p.passed}
            )
    _write(a.out, _json(report))


def cmd_prod(a):
    G = _load_set(a.file)
    A = parse_matrix_csv(_read(a.A))
    w = parse_w(a.w, G.s, G.m, G.b) if a.w else (0,) * G.s
    if a.algo == "standard":
        # standard product of the reduced net named by --kind
        H = G if not any(w) else reduce(G, w, a.kind, force=a.force)
        Y, counts = fast_product(H, w, A, "standard")
    else:
        Y, counts = fast_product(G, w, A, a.algo, force=a.force)
    _write(a.out, format_matrix_csv(Y))
    side = {
        "algo": a.algo,
        "w": list(w),
        "op_counts": counts.as_dict(),
        "theoretical": theoretical_costs(G.b, G.m, G.s, A.shape[1], w, a.algo).as_dict(),
    }
    if a.sidecar:
        _write(a.sidecar, _json(side))
    elif a.out not in (None, "-"):
        _write(str(a.out) + ".json", _json(side))


def _parse_subsets(text):
    out = []
    for part in text.split(";"):
        if part.strip():
            out.append(tuple(_ints(part)))
    return out


def cmd_disc(a):
    G = _load_set(a.file)
    w = parse_w(a.w, G.s, G.m, G.b) if a.w else (0,) * G.s
    weights = parse_weights(a.weights, G.s)
    ss = s_star(w, G.m)
    subsets = _parse_subsets(a.subsets) if a.subsets else None
    column = a.kind != "row"
    if column and not G.from_sequence and not a.force:
        raise ValidationError("column-type bounds need matrices from a sequence (use --force)")
    if subsets is None:
        if ss > 15:
            raise BudgetExceededError(f"s* = {ss} exceeds 15; pass --subsets")
        fam = [u for r in range(1, ss + 1) for u in itertools.combinations(range(1, ss + 1), r)]
    else:
        fam = [u for u in subsets if len(u) >= 2 and max(u) <= ss]
        fam += [(j,) for j in range(1, ss + 1)]
    t_map = projection_t_map(G, fam, sequence=column, budget=a.budget)
    bound = weighted_disc_bound(BoundInputs(G.b, G.m, w, weights, t_map), a.kind, subsets)
    _write(a.out, _json(bound.as_dict()))


def cmd_integrate(a):
    A = parse_matrix_csv(_read(a.A))
    s = A.shape[0]
    c = [float(x) for x in a.c.split(",")] if a.c else [1.0] * A.shape[1]
    f = Integrand(a.f, tuple(c), a.offset)
    b = a.b

    def make_set(m):
        return _construct(a.construction, b, m, s, a.seed)

    def w_of(m):
        return parse_w(a.w, s, m, b)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ReductionWarning)
        rows = error_report(make_set, w_of, a.kind, A, f, _range(a.m))
    _write(a.out, write_error_csv(rows))


def cmd_bench(a):
    cfg = BenchConfig(
        b=a.b,
        m=_range(a.m),
        s=_range(a.s),
        tau=a.tau,
        schedule=a.w,
        algorithms=tuple(a.algos.split(",")),
        repetitions=a.reps,
        seed=a.seed,
        backend=a.backend,
    )
    text = format_bench_csv(run_bench(cfg))
    _write(a.out, text)
    if a.svg:
        _write(a.svg, svg_chart(text))


def cmd_plot(a):
    _write(a.out, svg_chart(_read(a.csv)))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rednets", description="Reduced digital nets: generation, quality, fast XA.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(q, w=True, kind=True, force=True):
        q.add_argument("--out", "-o", default=None, help="output path (default stdout)")
        if w:
            q.add_argument("--w", default=None, help="comma list or schedule (log2, log2sqrt, zero)")
        if kind:
            q.add_argument("--kind", choices=KINDS, default="row")
        if force:
            q.add_argument("--force", action="store_true", help="allow column kinds on non-sequence matrices")

    q = sub.add_parser("gen", help="write a generating set")
    q.add_argument("--b", type=int, default=2)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--construction", choices=CONSTRUCTIONS, default="random")
    common(q, w=False, kind=False, force=False)
    q.set_defaults(fn=cmd_gen)

    q = sub.add_parser("net", help="export the points of a generating set as CSV")
    q.add_argument("file")
    common(q, w=False, kind=False, force=False)
    q.set_defaults(fn=cmd_net)

    q = sub.add_parser("reduce", help="apply a reduction to a generating set")
    q.add_argument("file")
    common(q)
    q.set_defaults(fn=cmd_reduce)

    q = sub.add_parser("quality", help="rho, t and reduced-net bounds as JSON")
    q.add_argument("file")
    q.add_argument("--projections", action="store_true")
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(q)
    q.set_defaults(fn=cmd_quality)

    q = sub.add_parser("prod", help="XA via one of the product algorithms")
    q.add_argument("file")
    q.add_argument("--A", required=True, help="dense matrix CSV")
    q.add_argument("--algo", choices=ALGORITHMS, default="standard")
    q.add_argument("--sidecar", default=None, help="JSON path for op counts (default <out>.json)")
    common(q)
    q.set_defaults(fn=cmd_prod)

    q = sub.add_parser("disc", help="weighted star discrepancy bound as JSON")
    q.add_argument("file")
    q.add_argument("--weights", default="j^-2")
    q.add_argument("--subsets", default=None, help="explicit family, e.g. '1,2;1,3'")
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(q)
    q.set_defaults(fn=cmd_disc)

    q = sub.add_parser("integrate", help="QMC error table for reduced and unreduced nets")
    q.add_argument("--A", required=True)
    q.add_argument("--b", type=int, default=2)
    q.add_argument("--m", default="4:10", help="range lo:hi or comma list")
    q.add_argument("--construction", choices=CONSTRUCTIONS, default="pascal")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--f", choices=("linear", "exponential"), default="exponential")
    q.add_argument("--c", default=None, help="integrand coefficients (default all ones)")
    q.add_argument("--offset", type=float, default=0.0)
    common(q, force=False)
    q.set_defaults(fn=cmd_integrate, w="zero")

    q = sub.add_parser("bench", help="time the product algorithms")
    q.add_argument("--b", type=int, default=2)
    q.add_argument("--m", default="12")
    q.add_argument("--s", default="50,200,800")
    q.add_argument("--tau", type=int, default=20)
    q.add_argument("--algos", default=",".join(ALGORITHMS))
    q.add_argument("--reps", type=int, default=5)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--backend", choices=("compiled", "python"), default=None)
    q.add_argument("--svg", default=None, help="also write the chart here")
    common(q, kind=False, force=False)
    q.set_defaults(fn=cmd_bench, w="log2")

    q = sub.add_parser("plot", help="SVG chart from a bench CSV")
    q.add_argument("csv")
    common(q, w=False, kind=False, force=False)
    q.set_defaults(fn=cmd_plot)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ReductionWarning)
            args.fn(args)
    except RednetsError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: io: {e}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
