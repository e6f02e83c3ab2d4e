import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rednets.errors import SequenceRequiredError, ValidationError
from rednets.nets import GeneratingSet, random_generating_set
from rednets.quality import rho_m
from rednets.reduction import (
    ReductionIndices,
    ReductionWarning,
    column_reduce,
    column_row_reduce,
    mixed_reduce,
    parse_w,
    row_reduce,
    s_star,
    schedule,
    validate_indices,
)


def seq_set(b, m, s, seed):
    G = random_generating_set(b, m, s, seed)
    return GeneratingSet(G.b, G.m, G.matrices, from_sequence=True)


def test_row_examples():
    G = seq_set(2, 3, 2, 1)
    assert row_reduce(G, (0, 0)) == G
    R = row_reduce(G, (0, 5))
    assert not R.matrices[1].entries.any()
    R = row_reduce(G, (0, 1))
    C = G.matrices[1].entries
    assert R.matrices[1].entries.tolist() == [C[0].tolist(), C[1].tolist(), [0, 0, 0]]


def test_column_examples():
    G = GeneratingSet.from_array(2, np.stack([np.eye(2, dtype=int)] * 2), from_sequence=True)
    assert column_reduce(G, (0, 0)) == G
    assert column_reduce(G, (0, 1)).matrices[1].entries.tolist() == [[1, 0], [0, 0]]
    assert not column_reduce(G, (0, 2)).matrices[1].entries.any()


def test_column_row_example():
    G = GeneratingSet.from_array(2, np.ones((1, 3, 3), dtype=int), from_sequence=True)
    with pytest.warns(ReductionWarning):
        R = column_row_reduce(G, (1,))
    assert R.matrices[0].entries.tolist() == [[1, 1, 0], [1, 1, 0], [0, 0, 0]]
    assert not column_row_reduce(G, (3,)).matrices[0].entries.any()


@pytest.mark.parametrize("seed", range(10))
def test_column_row_is_composition(seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    m, s = int(rng.integers(1, 7)), int(rng.integers(1, 5))
    G = seq_set(2, m, s, seed)
    w = tuple(np.sort(rng.integers(0, m + 2, size=s)).tolist())
    assert column_row_reduce(G, w) == column_reduce(row_reduce(G, w), w)
    assert column_row_reduce(G, w) == row_reduce(column_reduce(G, w), w)


def test_mixed_specialisations():
    G = seq_set(3, 4, 3, 5)
    w, z = (0, 1, 3), (0, 0, 0)
    assert mixed_reduce(G, w, z) == row_reduce(G, w)
    assert mixed_reduce(G, z, w) == column_reduce(G, w)
    assert mixed_reduce(G, w, w) == column_row_reduce(G, w)


def test_sequence_guard():
    G = random_generating_set(2, 3, 2, 0)
    with pytest.raises(SequenceRequiredError):
        column_reduce(G, (0, 1))
    with pytest.warns(ReductionWarning):
        column_reduce(G, (0, 1), force=True)
    # row reduction never needs the flag
    row_reduce(G, (0, 1))


def test_validation():
    with pytest.raises(ValidationError):
        validate_indices((1, 0))
    with pytest.raises(ValidationError):
        validate_indices((0, -1))
    with pytest.raises(ValidationError):
        validate_indices((0, 1), s=3)
    with pytest.raises(ValidationError):
        validate_indices((0, 1.5))
    with pytest.raises(ValidationError):
        ReductionIndices((0, 1), kind="mixed")
    assert validate_indices(("0", "2")) == (0, 2)
    with pytest.warns(ReductionWarning):
        row_reduce(seq_set(2, 3, 1, 0), (1,))


def test_s_star():
    w = schedule("log2", 800, 12, 2)
    assert w[799] == 9
    assert s_star(w, 12) == 800
    assert s_star((5, 5), 5) == 0
    assert s_star((0, 0, 0), 5) == 3
    assert s_star((0, 2, 7), 5) == 2


def test_schedules():
    assert schedule("log2", 9, 12) == (0, 1, 1, 2, 2, 2, 2, 3, 3)
    assert schedule("log2", 9, 2) == (0, 1, 1, 2, 2, 2, 2, 2, 2)
    assert schedule("log2sqrt", 17, 12) == (0,) * 3 + (1,) * 12 + (2,) * 2
    assert schedule("log2", 10, 5, 3) == (0, 0, 1, 1, 1, 1, 1, 1, 2, 2)
    assert schedule("zero", 3, 4) == (0, 0, 0)
    with pytest.raises(ValidationError):
        schedule("cubic", 3, 4)
    assert parse_w("0,1,1", 3, 4) == (0, 1, 1)
    assert parse_w("log2", 3, 4) == (0, 1, 1)


reduction_case = st.tuples(
    st.integers(1, 5), st.integers(1, 4), st.integers(0, 10**6), st.data()
)


def _w(data, s, m):
    return tuple(sorted(data.draw(st.lists(st.integers(0, m + 1), min_size=s, max_size=s))))


@settings(max_examples=40, deadline=None)
@given(reduction_case)
def test_idempotent_and_nested(case):
    m, s, seed, data = case
    G = seq_set(2, m, s, seed)
    w1 = _w(data, s, m)
    w2 = tuple(max(a, c) for a, c in zip(w1, _w(data, s, m)))
    for red in (row_reduce, column_reduce, column_row_reduce):
        R = red(G, w1)
        assert red(R, w1) == R
        # larger indices reduce further and compose by the pointwise max
        assert red(R, w2) == red(G, w2)


@settings(max_examples=40, deadline=None)
@given(reduction_case)
def test_rho_monotone_under_row_reduction(case):
    m, s, seed, data = case
    G = seq_set(2, m, s, seed)
    w = _w(data, s, m)
    assert rho_m(row_reduce(G, w)) <= rho_m(G)
    assert rho_m(column_row_reduce(G, w)) <= rho_m(row_reduce(G, w))
