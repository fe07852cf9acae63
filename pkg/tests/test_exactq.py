from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from greenlie.errors import DimensionMismatch, NotASubspace, ScalarParseError
from greenlie.exactq import (Matrix, QuotientMap, Subspace, block_diag, format_scalar, hstack, kernel_basis,
                             parse_scalar, quotient_dim, rank, rref, solve, vstack)

from conftest import rationals


def small_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rref_identity():
    m, piv = rref(Matrix.identity(3))
    assert m == Matrix.identity(3) and piv == [0, 1, 2]


def test_rref_rank_one():
    m, piv = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert m == Matrix.from_rows([[1, 2], [0, 0]]) and piv == [0]


def test_rref_permutation():
    m, piv = rref(Matrix.from_rows([[0, 1], [1, 0]]))
    assert m == Matrix.identity(2) and piv == [0, 1]


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(2, 3)).dim == 3
    assert kernel_basis(Matrix.identity(4)).dim == 0
    k = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert k.dim == 1 and (1, -1) in k


def test_solve_examples():
    assert solve(Matrix.from_rows([[2]]), [1]) == (Fraction(1, 2),)
    assert solve(Matrix.from_rows([[1], [1]]), [1, 2]) is None
    assert solve(Matrix.from_rows([[1, 0], [0, 0]]), [3, 0]) == (3, 0)
    with pytest.raises(DimensionMismatch):
        solve(Matrix.identity(2), [1])


def test_quotient_examples():
    full = Subspace.full(2)
    d, reps = quotient_dim(full, Subspace(2, [(1, 0)]))
    assert d == 1 and reps == [(0, 1)]
    assert quotient_dim(full, full) == (0, [])
    assert quotient_dim(Subspace.full(3), Subspace.zero(3))[0] == 3
    with pytest.raises(NotASubspace):
        quotient_dim(Subspace(2, [(1, 0)]), Subspace(2, [(0, 1)]))


def test_scalar_round_trip():
    for s in ["0", "-3", "7/2", "-1/3"]:
        assert format_scalar(parse_scalar(s)) == s
    assert parse_scalar("4/8") == Fraction(1, 2)
    for bad in ["1/0", "x", "1.5", None]:
        with pytest.raises(ScalarParseError):
            parse_scalar(bad)


def test_stacking():
    a, b = Matrix.identity(2), Matrix.from_rows([[1, 2]])
    assert vstack([a, b]).shape == (3, 2)
    assert hstack([a, Matrix.zeros(2, 1)]).shape == (2, 3)
    d = block_diag(a, b)
    assert d.shape == (3, 4) and d[2, 3] == 2 and d[0, 2] == 0


@given(small_matrices())
def test_rank_nullity(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) + kernel_basis(m).dim == m.cols


@given(small_matrices())
def test_rank_matches_sympy(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


@given(small_matrices())
def test_kernel_vectors_are_killed(rows):
    m = Matrix.from_rows(rows)
    for v in kernel_basis(m).basis:
        assert not any(m @ v)


@given(small_matrices(), st.data())
def test_solve_consistency(rows, data):
    m = Matrix.from_rows(rows)
    x0 = data.draw(st.lists(rationals, min_size=m.cols, max_size=m.cols))
    b = m @ tuple(x0)
    x = solve(m, b)
    assert x is not None and m @ x == b


@st.composite
def compatible_pair(draw):
    r, k, c = (draw(st.integers(1, 4)) for _ in range(3))
    a = draw(st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=r, max_size=r))
    b = draw(st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=k, max_size=k))
    return Matrix.from_rows(a), Matrix.from_rows(b)


@given(compatible_pair())
def test_transpose_of_product(pair):
    a, b = pair
    assert (a @ b).T == b.T @ a.T


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), max_size=5))
def test_quotient_map_kills_relations(vectors):
    W = Subspace(4, vectors)
    q = QuotientMap(W)
    assert q.dim == 4 - W.dim
    for v in W.basis:
        assert not any(q.project(v))
    for j, r in enumerate(q.representatives()):
        assert q.project(r) == tuple(1 if k == j else 0 for k in range(q.dim))
