"""Exact linear algebra: row reduction, kernels, quotients, factorization."""

from fractions import Fraction

import pytest

from bimodconn.fixtures import a2
from bimodconn.linalg import (DimensionError, LinMap, Space, factor_through,
                              kernel, mat, quotient, row_reduce, zeros)

F = Fraction


def test_row_reduce_identity():
    rank, _, pivots = row_reduce(mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert rank == 3
    assert pivots == [0, 1, 2]


def test_row_reduce_zero():
    rank, _, pivots = row_reduce(mat([[0, 0, 0, 0], [0, 0, 0, 0]]))
    assert rank == 0
    assert pivots == []


def test_row_reduce_rank_one():
    rank, reduced, pivots = row_reduce(mat([[1, 2], [2, 4]]))
    assert rank == 1
    assert pivots == [0]
    assert reduced[0] == [F(1), F(2)]


def test_kernel_identity():
    assert kernel(LinMap.identity(Space.standard(3))).dim == 0


def test_kernel_zero_map():
    s = Space.standard(2)
    assert kernel(LinMap.zero(s, s)).dim == 2


def test_kernel_multiplication_map():
    # For the two-point algebra, ker(mu: A(x)A -> A) is spanned by
    # e1(x)e2 and e2(x)e1 inside the 4-dimensional plain tensor square.
    mu = a2().multiplication_map()
    ker = kernel(mu)
    assert ker.dim == 2
    expected = {(F(0), F(1), F(0), F(0)), (F(0), F(0), F(1), F(0))}
    got = {tuple(v) for v in ker.basis}
    assert got == expected


def test_quotient_dimensions():
    total = Space.standard(3)
    sub = Space.subspace(total, [[F(1), F(0), F(0)]])
    q = quotient(total, sub)
    assert q.dim == 2
    # projection kills the subspace and splits the section exactly
    assert q.project([F(5), F(0), F(0)]) == zeros(2)
    for k in range(2):
        e = zeros(2)
        e[k] = F(1)
        assert q.project(q.lift(e)) == e


def test_quotient_by_zero_and_by_all():
    v = Space.standard(2)
    assert quotient(v, Space.subspace(v, [])).dim == 2
    full = Space.subspace(v, [[F(1), F(0)], [F(0), F(1)]])
    assert quotient(v, full).dim == 0


def test_quotient_rejects_non_subspace():
    with pytest.raises(DimensionError):
        quotient(Space.standard(2), Space.standard(3))


def test_factor_through_identity():
    i = LinMap.identity(Space.standard(2))
    h, wit = factor_through(i, i)
    assert wit is None
    assert h.mat() == i.mat()


def test_factor_through_zero_always_factors():
    dom, cod = Space.standard(2), Space.standard(1)
    s = LinMap.from_matrix(dom, cod, mat([[1, 1]]))
    h, wit = factor_through(s, LinMap.zero(dom, cod))
    assert wit is None
    assert h.is_zero()


def test_factor_through_absent_with_witness():
    dom, cod = Space.standard(2), Space.standard(1)
    s = LinMap.from_matrix(dom, cod, mat([[1, 1]]))
    d = LinMap.from_matrix(dom, cod, mat([[1, -1]]))
    h, wit = factor_through(s, d)
    assert h is None
    assert s.apply(wit) == zeros(1)
    assert d.apply(wit) != zeros(1)


def test_rank_nullity():
    dom, cod = Space.standard(3), Space.standard(2)
    f = LinMap.from_matrix(dom, cod, mat([[1, 2, 3], [2, 4, 6]]))
    assert kernel(f).dim + f.rank() == 3
