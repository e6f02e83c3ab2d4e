"""Compiled vs pure-Python kernels on the product algorithms.

Usage: python3 benchmarks/compare_backends.py [--m 12] [--s 200] [--tau 20] [--reps 5]

Prints one CSV row per algorithm with the median time of each backend and
the speedup, after checking that both backends return the same XA.
"""

import argparse
import sys
import warnings

import numpy as np

from rednets.bench import BenchConfig, run_bench
from rednets.kernels import has_compiled
from rednets.nets import random_generating_set
from rednets.products import ALGORITHMS, fast_product
from rednets.reduction import ReductionWarning, schedule


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--m", type=int, default=12)
    p.add_argument("--s", type=int, default=200)
    p.add_argument("--tau", type=int, default=20)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    if not has_compiled():
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    warnings.simplefilter("ignore", ReductionWarning)
    G = random_generating_set(a.b, a.m, a.s, a.seed)
    A = np.random.Generator(np.random.PCG64(a.seed)).random((a.s, a.tau))
    w = schedule("log2", a.s, a.m, a.b)
    for algo in ALGORITHMS:
        y_c, _ = fast_product(G, w, A, algo, force=True, backend="compiled")
        y_p, _ = fast_product(G, w, A, algo, force=True, backend="python")
        err = np.max(np.abs(y_c - y_p))
        if err > 1e-12 * max(1.0, np.max(np.abs(y_c))):
            print(f"{algo}: backends disagree, max abs diff {err:.3e}", file=sys.stderr)
            return 1

    times = {}
    for backend in ("compiled", "python"):
        cfg = BenchConfig(
            b=a.b, m=(a.m,), s=(a.s,), tau=a.tau, repetitions=a.reps, seed=a.seed, backend=backend
        )
        for r in run_bench(cfg):
            times[(r["algo"], backend)] = r["wall_ns_median"]

    print("algo,b,m,s,tau,compiled_ns,python_ns,speedup")
    for algo in ALGORITHMS:
        c, py = times[(algo, "compiled")], times[(algo, "python")]
        print(f"{algo},{a.b},{a.m},{a.s},{a.tau},{c},{py},{py / c:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
