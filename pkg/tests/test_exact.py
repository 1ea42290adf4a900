"""Exact rational linear algebra and Laurent polynomial arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arckit import QPoly, SparseMatrix, kernel_basis, rank, solve


class TestQPoly:
    def test_str_formats(self):
        assert str(QPoly({4: 1, 2: 1})) == "q^4 + q^2"
        assert str(QPoly()) == "0"
        assert str(QPoly({0: 1})) == "1"
        assert str(QPoly({1: 1})) == "q"
        assert str(QPoly({2: -3, 0: 2})) == "-3*q^2 + 2"

    def test_arithmetic(self):
        p = QPoly({1: 1, 0: 1})
        assert p * p == QPoly({2: 1, 1: 2, 0: 1})
        assert p - p == QPoly.zero()
        assert (-p) + p == QPoly.zero()
        assert p.shift(3) == QPoly({4: 1, 3: 1})
        assert QPoly.q_power(5, -2) == QPoly({5: -2})

    def test_evaluation_and_degree(self):
        p = QPoly({3: 2, 1: 1})
        assert p(1) == 3
        assert p(2) == 18
        assert p.degree() == 3
        assert p.coeff(1) == 1 and p.coeff(2) == 0

    @given(
        st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=5),
        st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=5),
    )
    def test_product_evaluates_pointwise(self, c1, c2):
        p, q = QPoly(c1), QPoly(c2)
        assert (p * q)(2) == p(2) * q(2)
        assert (p + q)(3) == p(3) + q(3)


def _random_matrix(draw_rows):
    return SparseMatrix.from_rows(draw_rows)


matrix_strategy = st.integers(1, 5).flatmap(
    lambda cols: st.lists(
        st.lists(st.integers(-4, 4), min_size=cols, max_size=cols),
        min_size=1,
        max_size=5,
    )
)


class TestSparseMatrix:
    def test_rank_known(self):
        a = SparseMatrix.from_rows([[1, 2], [2, 4], [0, 1]])
        assert rank(a) == 2
        assert rank(SparseMatrix.zeros(3, 4)) == 0
        assert rank(SparseMatrix.identity(5)) == 5

    def test_matmul_and_apply(self):
        a = SparseMatrix.from_rows([[1, 2], [3, 4]])
        b = SparseMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).dense() == [[2, 1], [4, 3]]
        assert a.apply([1, 1]) == [3, 7]

    @settings(max_examples=60, deadline=None)
    @given(matrix_strategy)
    def test_rank_nullity(self, rows):
        a = _random_matrix(rows)
        kernel = kernel_basis(a)
        assert rank(a) + len(kernel) == a.cols
        for vec in kernel:
            assert all(x == 0 for x in a.apply(vec))

    @settings(max_examples=60, deadline=None)
    @given(matrix_strategy, st.lists(st.integers(-3, 3), min_size=1, max_size=5))
    def test_solve_consistent_system(self, rows, x0):
        a = _random_matrix(rows)
        x0 = (x0 * a.cols)[: a.cols]
        b = a.apply(x0)
        x = solve(a, b)
        assert x is not None
        assert a.apply(x) == [Fraction(v) for v in b]

    def test_solve_inconsistent(self):
        a = SparseMatrix.from_rows([[1, 0], [1, 0]])
        assert solve(a, [1, 2]) is None
