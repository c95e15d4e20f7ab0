"""
Unit tests for exact linear algebra helpers.
"""

from fractions import Fraction

from adictrop.core.linalg import (
    ColumnReduction,
    determinant,
    inverse,
    nullspace,
    rank,
    row_space_basis,
)


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


class TestRationalLinearAlgebra:
    """Tests for the sympy-backed helpers."""

    def test_rank(self):
        assert rank([(1, 2), (2, 4)], 2) == 1
        assert rank([], 3) == 0

    def test_row_space_basis_is_canonical(self):
        first, _ = row_space_basis([(1, 1, 0), (0, 1, 1)], 3)
        second, _ = row_space_basis([(1, 2, 1), (2, 2, 0)], 3)
        assert first == second

    def test_row_space_rows_are_primitive_integers(self):
        basis, pivots = row_space_basis([(2, 4, 6)], 3)
        assert basis == [(1, 2, 3)]
        assert pivots == (0,)

    def test_nullspace(self):
        kernel = nullspace([(1, 1, 1)], 3)
        assert len(kernel) == 2
        for vec in kernel:
            assert sum(vec) == 0

    def test_nullspace_of_nothing(self):
        assert nullspace([], 2) == [(1, 0), (0, 1)]

    def test_inverse(self):
        inv = inverse([[2, 1], [1, 1]])
        assert inv == [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]

    def test_determinant(self):
        assert determinant([[1, 2], [3, 4]]) == -2


class TestColumnReduction:
    """Tests for unimodular column reduction."""

    def setup_method(self):
        """Set up test fixtures."""
        self.matrix = [[2, 4, 6], [1, 3, 5]]
        self.reduction = ColumnReduction(self.matrix, 3)

    def test_rank(self):
        assert self.reduction.rank == 2

    def test_reduced_is_a_times_u(self):
        assert mat_mul(self.matrix, self.reduction.unimodular) == self.reduction.reduced

    def test_inverse_is_tracked(self):
        product = mat_mul(self.reduction.unimodular, self.reduction.unimodular_inverse)
        assert product == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_kernel_basis(self):
        (vec,) = self.reduction.kernel_basis()
        assert [sum(a * b for a, b in zip(row, vec)) for row in self.matrix] == [0, 0]
        assert abs(vec[0]) + abs(vec[1]) + abs(vec[2]) > 0

    def test_coordinates_round_trip(self):
        x = (3, -2, 7)
        head = self.reduction.to_quotient_coordinates(x)
        tail = self.reduction.to_kernel_coordinates(x)
        assert self.reduction.from_coordinates(head, tail) == x

    def test_kernel_vector_has_no_quotient_part(self):
        (vec,) = self.reduction.kernel_basis()
        assert self.reduction.to_quotient_coordinates(vec) == (0, 0)
        assert self.reduction.to_kernel_coordinates(vec) == (1,)
