import numpy as np
import pytest

from rednets.errors import ValidationError
from rednets.integrate import Integrand, error_report, qmc_quadrature, qmc_reduced, write_error_csv
from rednets.nets import (
    GeneratingSet,
    generate_net,
    pascal_generating_set,
    random_generating_set,
)
from rednets.reduction import schedule


def test_constant_integrand(rng):
    f = Integrand("linear", (0.0, 0.0), offset=1.0)
    for seed in range(5):
        G = random_generating_set(2, 5, 3, seed)
        A = rng.random((3, 2))
        assert qmc_quadrature(generate_net(G), A, f) == 1.0
        assert qmc_reduced(G, (0, 1, 2), "row", A, f) == 1.0


def test_references():
    A = np.array([[1.0, 0.0], [0.5, 2.0]])
    lin = Integrand("linear", (1.0, 3.0), offset=0.5)
    assert lin.reference(A) == pytest.approx(0.5 + (1 + 0.5 + 3 * 2) / 2)
    ex = Integrand("exponential", (1.0, 0.0))
    beta = A @ [1.0, 0.0]
    assert ex.reference(A) == pytest.approx(np.prod(np.expm1(beta) / beta))
    # beta_j = 0 contributes a factor 1
    assert Integrand("exponential", (0.0, 1.0)).reference(np.array([[1.0, 0.0]])) == 1.0
    with pytest.raises(ValidationError):
        Integrand("quadratic", (1.0,))
    with pytest.raises(ValidationError):
        Integrand("linear", (np.inf,))


def test_linear_error_vdc():
    f = Integrand("linear", (1.0,))
    A = np.array([[1.0]])
    for m in range(1, 10):
        P = generate_net(GeneratingSet.from_array(2, np.eye(m, dtype=int)[None]))
        # points k / 2^m have mean (1 - 2^-m)/2
        assert abs(qmc_quadrature(P, A, f) - f.reference(A)) == pytest.approx(2.0 ** -(m + 1))


def test_standard_and_fast_agree(rng):
    G = pascal_generating_set(2, 8, 2)
    A = rng.random((2, 3))
    f = Integrand("exponential", (0.3, -0.2, 0.5))
    w = schedule("log2", 2, 8)
    for kind in ("row", "column", "column_row"):
        from rednets.reduction import reduce

        P = generate_net(reduce(G, w, kind))
        assert abs(qmc_quadrature(P, A, f) - qmc_reduced(G, w, kind, A, f)) <= 1e-10


def test_error_report_examples():
    A = np.array([[1.0], [0.5]])
    f = Integrand("exponential", (1.0,))
    rows = error_report(lambda m: pascal_generating_set(2, m, 2), (0, 0), "row", A, f, range(3, 6))
    assert all(r.err_reduced == r.err_unreduced for r in rows)
    rows = error_report(lambda m: pascal_generating_set(2, m, 2), (9, 9), "row", A, f, [4])
    assert rows[0].err_reduced == pytest.approx(abs(1.0 - f.reference(A)))
    text = write_error_csv(rows)
    assert text.splitlines()[0] == "m,N,err_unreduced,err_reduced,disc_bound"


def test_error_trend_pascal_pair():
    A = np.array([[1.0], [0.5]])
    f = Integrand("exponential", (1.0,))
    rows = error_report(
        lambda m: pascal_generating_set(2, m, 2), lambda m: schedule("log2", 2, m), "row", A, f, range(4, 11)
    )
    errs = [r.err_unreduced for r in rows]
    assert sum(b > a for a, b in zip(errs, errs[1:])) <= 1
    assert all(r.disc_bound > 0 for r in rows)


def test_dimension_mismatch(rng):
    P = generate_net(random_generating_set(2, 3, 2, 0))
    with pytest.raises(ValidationError):
        qmc_quadrature(P, rng.random((3, 1)), Integrand("linear", (1.0,)))
    with pytest.raises(ValidationError):
        qmc_quadrature(P, rng.random((2, 2)), Integrand("linear", (1.0,)))
