import math

import numpy as np
import pytest

from rednets.errors import ValidationError
from rednets.gf import rank
from rednets.kernels import get_backend, has_compiled
from rednets.nets import (
    DigitalNet,
    GeneratingSet,
    digits_of,
    generate_net,
    pascal_extended_generating_set,
    pascal_generating_set,
    random_generating_set,
)
from rednets.quality import min_t, rho_m


def one(b, C):
    return GeneratingSet.from_array(b, np.asarray(C)[None])


def test_digits_of_examples():
    assert digits_of(0, 2, 3) == (0, 0, 0)
    assert digits_of(6, 2, 3) == (0, 1, 1)
    assert digits_of(7, 3, 2) == (1, 2)
    with pytest.raises(ValidationError):
        digits_of(8, 2, 3)


def test_van_der_corput():
    P = generate_net(one(2, np.eye(2, dtype=int)))
    assert P.numerators[:, 0].tolist() == [0, 2, 1, 3]
    assert P.points()[:, 0].tolist() == [0, 0.5, 0.25, 0.75]


def test_zero_matrix_gives_zero_column():
    G = GeneratingSet.from_array(3, np.stack([np.eye(3, dtype=int), np.zeros((3, 3), dtype=int)]))
    assert not generate_net(G).numerators[:, 1].any()


def test_all_ones_example():
    P = generate_net(one(2, np.ones((2, 2), dtype=int)))
    assert (P.numerators[:, 0] / 4).tolist() == [0, 0.75, 0.75, 0]


def test_generate_matches_direct_definition(rng):
    b, m = 3, 3
    G = GeneratingSet.from_array(b, rng.integers(0, b, size=(2, m, m)))
    P = generate_net(G)
    for k in range(b**m):
        d = np.array(digits_of(k, b, m))
        for j, C in enumerate(G.matrices):
            y = C.entries @ d % b
            assert P.numerators[k, j] == sum(int(y[i]) * b ** (m - 1 - i) for i in range(m))


@pytest.mark.skipif(not has_compiled(), reason="compiled extension missing")
def test_backends_agree(rng):
    G = random_generating_set(2, 7, 5, 3)
    a = generate_net(G, backend="compiled").numerators
    b = generate_net(G, backend="python").numerators
    assert np.array_equal(a, b)
    assert get_backend("python").NAME == "python"


def test_random_set_determinism():
    assert random_generating_set(2, 5, 3, 11) == random_generating_set(2, 5, 3, 11)
    assert random_generating_set(2, 5, 3, 11) != random_generating_set(2, 5, 3, 12)
    G = random_generating_set(2, 1, 1, 4)
    assert G.matrices[0].entries.shape == (1, 1)
    assert G.matrices[0].entries[0, 0] in (0, 1)
    assert not G.from_sequence


def test_random_full_rank_fraction():
    full = sum(rank(random_generating_set(2, 4, 1, seed).matrices[0]) == 4 for seed in range(1000))
    expected = math.prod(1 - 2.0**-i for i in range(1, 5))
    assert abs(full / 1000 - expected) <= 0.05


def test_pascal_examples():
    G = pascal_generating_set(3, 3, 2)
    assert np.array_equal(G.matrices[0].entries, np.eye(3, dtype=int))
    assert G.matrices[1].entries.tolist() == [[1, 1, 1], [0, 1, 2], [0, 0, 1]]
    assert G.from_sequence


@pytest.mark.parametrize("m", range(1, 7))
def test_pascal_pair_is_t0(m):
    G = pascal_generating_set(2, m, 2)
    assert rho_m(G) == m
    assert min_t(G) == 0


def test_pascal_limits():
    with pytest.raises(ValidationError):
        pascal_generating_set(2, 3, 3)


def test_pascal_extended():
    G = pascal_extended_generating_set(2, 5, 6, 0)
    assert G.s == 6 and G.from_sequence
    for C in G.matrices:
        E = C.entries
        assert not np.tril(E, -1).any() and (np.diag(E) != 0).all()
    # the first b coordinates are the Pascal net
    assert G.subset([1, 2]) == pascal_generating_set(2, 5, 2).subset([1, 2])


def test_sections_are_upper_left():
    G = pascal_extended_generating_set(3, 5, 4, 2)
    H = pascal_extended_generating_set(3, 3, 4, 2)
    assert np.array_equal(G.section(3).stacked, G.stacked[:, :3, :3])
    assert G.section(3).subset([1, 2, 3]) == H.subset([1, 2, 3])


def test_net_validation():
    with pytest.raises(ValidationError):
        DigitalNet(2, 2, np.array([[0], [1], [4], [3]]))
    with pytest.raises(ValidationError):
        DigitalNet(2, 2, np.array([[0], [1]]))
    with pytest.raises(ValidationError):
        GeneratingSet.from_array(2, np.zeros((1, 2, 3), dtype=int))
    with pytest.raises(ValidationError):
        GeneratingSet.from_array(6, np.zeros((1, 2, 2), dtype=int))


def test_project():
    P = generate_net(random_generating_set(2, 3, 3, 0))
    Q = P.project([3, 1])
    assert np.array_equal(Q.numerators, P.numerators[:, [2, 0]])
