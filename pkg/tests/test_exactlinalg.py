from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagmod.exactlinalg import (
    SubspaceBasis,
    as_matrix,
    express,
    format_matrix,
    intersect,
    nullspace,
    parse_matrix,
    rank,
    rref,
    spin,
    subspace_sum,
)
from flagmod.fields import GF, QQ

FIELDS = [GF(2), GF(5), QQ]


def matrices(max_rows=5, max_cols=5, p=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_small():
    F = GF(5)
    B = rref([[1, 2, 3], [2, 4, 0]], F)
    assert B.dim == 2
    assert B.pivots == [0, 2]
    assert B.rows.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_rref_rationals():
    B = rref([[2, 4], [1, 3]], QQ)
    assert B.rows.tolist() == [[1, 0], [0, 1]]
    B = rref([[Fraction(1, 2), 1]], QQ)
    assert B.rows.tolist() == [[1, 2]]


def test_ragged_rejected():
    with pytest.raises(ValueError):
        as_matrix([[1, 2], [3]], GF(5))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent_and_canonical(rows):
    F = GF(5)
    B = rref(rows, F)
    again = rref(B.rows, F)
    assert np.array_equal(B.rows, again.rows)
    # row order does not matter
    assert rref(list(reversed(rows)), F) == B
    assert list(B.pivots) == sorted(B.pivots)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    F = GF(5)
    A = as_matrix(rows, F)
    N = nullspace(A, F)
    assert rank(A, F) + len(N) == A.shape[1]
    for v in N:
        assert not np.any(F.normalize(A @ v))


@settings(max_examples=40, deadline=None)
@given(matrices(4, 5), matrices(4, 5))
def test_sum_intersection_dimension(a, b):
    F = GF(5)
    width = min(len(a[0]), len(b[0]))
    A = SubspaceBasis.from_rows([r[:width] for r in a], F, width)
    B = SubspaceBasis.from_rows([r[:width] for r in b], F, width)
    S, I = subspace_sum(A, B), intersect(A, B)
    assert A.dim + B.dim == S.dim + I.dim
    assert A.contains_space(I) and B.contains_space(I)
    assert S.contains_space(A) and S.contains_space(B)


def test_membership_and_coordinates():
    F = QQ
    B = SubspaceBasis.from_rows([[1, 1, 0], [0, 1, 1]], F)
    v = F.array([2, 3, 1])
    assert v in B
    c = B.coordinates(v)
    assert np.array_equal(F.normalize(c @ B.rows), v)
    assert F.array([1, 0, 0]) not in B


def test_spin_cyclic_shift():
    F = GF(5)
    shift = np.roll(np.eye(3, dtype=np.int64), 1, axis=0)
    S = spin([F.array([1, 0, 0])], [shift], F, 3)
    assert S.dim == 3
    S = spin([F.array([1, 1, 1])], [shift], F, 3)
    assert S.dim == 1


def test_spin_callable_operator():
    F = QQ
    S = spin([F.array([1, 0, 0, 0])], [lambda v: np.roll(v, 1)], F, 4)
    assert S.dim == 4


def test_express():
    F = GF(7)
    vs = [F.array([1, 0, 2]), F.array([0, 1, 1])]
    c = express(vs, F.array([3, 2, 1 * 6 + 2]), F)
    assert list(c) == [3, 2]
    assert express(vs, F.array([0, 0, 1]), F) is None


@pytest.mark.parametrize("F", FIELDS)
def test_matrix_text_roundtrip(F):
    A = as_matrix([[1, 0], [F(3), 1]], F)
    assert np.array_equal(parse_matrix(format_matrix(A, F), F), A)
