import json
from fractions import Fraction

import numpy as np
import pytest

from rednets.cli import main
from rednets.errors import ValidationError
from rednets.formats import (
    exact_decimal,
    format_generating_set,
    format_matrix_csv,
    format_net_csv,
    parse_generating_set,
    parse_matrix_csv,
    parse_net_csv,
)
from rednets.nets import generate_net, pascal_generating_set, random_generating_set
from rednets.reduction import row_reduce


@pytest.mark.parametrize("b,m,s", [(2, 4, 3), (3, 3, 2), (5, 2, 2), (7, 2, 1)])
def test_generating_set_round_trip(b, m, s):
    G = random_generating_set(b, m, s, 5)
    assert parse_generating_set(format_generating_set(G)) == G
    P = pascal_generating_set(3, 3, 3)
    assert parse_generating_set(format_generating_set(P)).from_sequence


@pytest.mark.parametrize("b,m", [(2, 5), (3, 3), (5, 2)])
def test_net_csv_round_trip(b, m):
    P = generate_net(random_generating_set(b, m, 2, 1))
    text = format_net_csv(P)
    Q = parse_net_csv(text)
    assert (Q.b, Q.m) == (b, m) and np.array_equal(Q.numerators, P.numerators)
    assert format_net_csv(Q) == text


def test_exact_decimal():
    assert exact_decimal(3, 2, 2) == "0.75"
    assert exact_decimal(0, 2, 3) == "0"
    assert exact_decimal(1, 5, 2) == "0.04"
    assert exact_decimal(1, 3, 2) == "1/9"
    assert Fraction(exact_decimal(13, 2, 6)) == Fraction(13, 64)


def test_matrix_round_trip(rng):
    M = rng.standard_normal((5, 3)) * 10.0 ** rng.integers(-20, 20, size=(5, 3))
    assert np.array_equal(parse_matrix_csv(format_matrix_csv(M)), M)


@pytest.mark.parametrize(
    "text",
    ["", "2 2 1", "2 2 1 0\n1 0\n0", "4 1 1 0\n1", "2 2 1 3\n1 0\n0 1", "2 2 1 0\n1 x\n0 1"],
)
def test_malformed_generating_sets(text):
    with pytest.raises(ValidationError):
        parse_generating_set(text)


def test_malformed_csv():
    with pytest.raises(ValidationError):
        parse_matrix_csv("1,2\n3\n")
    with pytest.raises(ValidationError):
        parse_matrix_csv("1,nan\n")
    with pytest.raises(ValidationError):
        parse_net_csv("k,x_1\n0,0\n1,0.5\n2,0.25\n")


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_gen_quality(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert run(capsys, "gen", "--b", 2, "--m", 4, "--s", 3, "--seed", 7, "--out", g)[0] == 0
    assert parse_generating_set(g.read_text()) == random_generating_set(2, 4, 3, 7)
    code, out, _ = run(capsys, "quality", g, "--projections")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"rho", "t", "bounds", "per_projection"}
    assert rep["bounds"]["pass"] and len(rep["per_projection"]) == 7
    assert rep["rho"] + rep["t"] == 4


def test_cli_reduce_prod(tmp_path, capsys):
    g, gr, a = tmp_path / "g.txt", tmp_path / "gr.txt", tmp_path / "a.csv"
    run(capsys, "gen", "--b", 2, "--m", 6, "--s", 3, "--seed", 7, "-o", g)
    assert run(capsys, "reduce", g, "--kind", "row", "--w", "0,1,2", "--out", gr)[0] == 0
    G = parse_generating_set(g.read_text())
    assert parse_generating_set(gr.read_text()) == row_reduce(G, (0, 1, 2))
    a.write_text(format_matrix_csv(np.random.Generator(np.random.PCG64(0)).random((3, 4))))
    y1, y2 = tmp_path / "y1.csv", tmp_path / "y2.csv"
    assert run(capsys, "prod", gr, "--A", a, "--algo", "row", "--w", "0,1,2", "-o", y1)[0] == 0
    assert run(capsys, "prod", gr, "--A", a, "--algo", "standard", "-o", y2)[0] == 0
    Y1, Y2 = parse_matrix_csv(y1.read_text()), parse_matrix_csv(y2.read_text())
    assert np.max(np.abs(Y1 - Y2)) <= 1e-12 * max(1.0, np.max(np.abs(Y2)))
    side = json.loads((tmp_path / "y1.csv.json").read_text())
    assert side["op_counts"]["scalar_mults"] == (64 + 32 + 16) * 4
    assert side["theoretical"]["product"] == (64 + 32 + 16) * 4


def test_cli_disc_integrate(tmp_path, capsys):
    g, a = tmp_path / "g.txt", tmp_path / "a.csv"
    run(capsys, "gen", "--construction", "pascal", "--b", 2, "--m", 5, "--s", 2, "-o", g)
    code, out, _ = run(capsys, "disc", g, "--w", "log2", "--kind", "column_row", "--weights", "gamma=j^-2")
    d = json.loads(out)
    assert code == 0 and set(d) == {"term1", "term2", "term3", "bound", "argmax_subset"}
    a.write_text("1\n0.5\n")
    code, out, _ = run(capsys, "integrate", "--A", a, "--m", "4:6", "--w", "log2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "m,N,err_unreduced,err_reduced,disc_bound" and len(lines) == 4


def test_cli_bench_plot(tmp_path, capsys):
    csv_path, svg = tmp_path / "b.csv", tmp_path / "b.svg"
    code, _, _ = run(capsys, "bench", "--m", 5, "--s", "4,8", "--tau", 2, "--reps", 1, "-o", csv_path, "--svg", svg)
    assert code == 0
    assert csv_path.read_text().splitlines()[0] == "algo,b,m,s,tau,schedule,wall_ns_median,mults,adds,theory"
    code, out, _ = run(capsys, "plot", csv_path)
    assert code == 0 and out == svg.read_text()


def test_cli_errors(tmp_path, capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and err.startswith("error: validation:") and err.count("\n") == 1
    code, _, err = run(capsys, "quality", tmp_path / "missing.txt")
    assert code == 4 and err.startswith("error: io:")
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2 1 0\n1 0\n")
    assert run(capsys, "quality", bad)[0] == 2
    g = tmp_path / "g.txt"
    run(capsys, "gen", "--m", 6, "--s", 3, "-o", g)
    code, _, err = run(capsys, "quality", g, "--budget", 2)
    assert code == 3 and err.startswith("error: budget:")
    code, _, err = run(capsys, "reduce", g, "--kind", "column", "--w", "0,1,1")
    assert code == 2 and err.startswith("error: sequence_required:")
