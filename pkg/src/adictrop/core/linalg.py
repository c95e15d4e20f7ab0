"""
Exact linear algebra helpers.

Rank, reduced row echelon forms, nullspaces and inverses go through
``sympy.Matrix`` over the rationals. Integer lattice work (kernels over Z,
quotient coordinates) uses unimodular column reduction, which keeps track of
the transformation and its inverse so that points can be moved between
coordinate systems without leaving the lattice.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from adictrop.core.exactnum import integral_direction


def _to_sympy(x) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    r = sympy.Rational(x)
    return Fraction(int(r.p), int(r.q))


def to_matrix(rows: Sequence[Sequence], width: int) -> sympy.Matrix:
    """Build a sympy Matrix with exact rational entries."""
    if not rows:
        return sympy.zeros(0, width)
    return sympy.Matrix([[_to_sympy(x) for x in row] for row in rows])


def rank(rows: Sequence[Sequence], width: int) -> int:
    if not rows:
        return 0
    return int(to_matrix(rows, width).rank())


def row_space_basis(rows: Sequence[Sequence], width: int) -> Tuple[List[Tuple[int, ...]], Tuple[int, ...]]:
    """Canonical integer basis of the row space.

    The basis is the reduced row echelon form with each row scaled to a
    primitive integer vector, so two spanning sets of the same subspace give
    identical output.

    Returns:
        The basis rows and the pivot columns
    """
    if not rows:
        return [], ()
    reduced, pivots = to_matrix(rows, width).rref()
    basis = []
    for i in range(len(pivots)):
        row = [_to_fraction(reduced[i, j]) for j in range(width)]
        basis.append(integral_direction(row))
    return basis, tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence], width: int) -> List[Tuple[int, ...]]:
    """Integer basis (primitive vectors) of {x : A x = 0}."""
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(width)) for i in range(width)]
    return [
        integral_direction([_to_fraction(x) for x in vec])
        for vec in to_matrix(rows, width).nullspace()
    ]


def inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact inverse of a square nonsingular matrix."""
    n = len(matrix)
    inv = to_matrix(matrix, n).inv()
    return [[_to_fraction(inv[i, j]) for j in range(n)] for i in range(n)]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    return int(to_matrix(matrix, n).det())


class ColumnReduction:
    """Unimodular column reduction A U = [H | 0] of an integer matrix.

    Column operations are applied to ``A`` and mirrored on ``U``; the inverse
    ``U_inv`` is maintained alongside by the opposite row operations. After
    reduction, columns ``rank..width-1`` of ``U`` form a Z-basis of the integer
    kernel of ``A`` and ``H`` is lower triangular in its first ``rank`` columns.

    Attributes:
        width: Number of columns of the input
        rank: Number of pivot columns found
        reduced: The reduced matrix A U
        unimodular: The matrix U (rows x columns, integer, det +-1)
        unimodular_inverse: U^{-1}
    """

    def __init__(self, matrix: Sequence[Sequence[int]], width: int):
        self.width = width
        a = [[int(x) for x in row] for row in matrix]
        u = [[1 if i == j else 0 for j in range(width)] for i in range(width)]
        u_inv = [[1 if i == j else 0 for j in range(width)] for i in range(width)]

        col = 0
        for i in range(len(a)):
            if col >= width:
                break
            while True:
                candidates = [j for j in range(col, width) if a[i][j] != 0]
                if not candidates:
                    break
                pivot = min(candidates, key=lambda j: abs(a[i][j]))
                if pivot != col:
                    _swap_columns(a, pivot, col)
                    _swap_columns(u, pivot, col)
                    u_inv[pivot], u_inv[col] = u_inv[col], u_inv[pivot]
                done = True
                for j in range(col + 1, width):
                    if a[i][j] == 0:
                        continue
                    q = a[i][j] // a[i][col]
                    _add_column_multiple(a, source=col, target=j, factor=-q)
                    _add_column_multiple(u, source=col, target=j, factor=-q)
                    # row_col += q * row_j keeps U_inv equal to U^{-1}
                    u_inv[col] = [x + q * y for x, y in zip(u_inv[col], u_inv[j])]
                    if a[i][j] != 0:
                        done = False
                if done:
                    break
            if any(a[i][j] != 0 for j in range(col, width)):
                col += 1

        self.rank = col
        self.reduced = a
        self.unimodular = u
        self.unimodular_inverse = u_inv

    def kernel_basis(self) -> List[Tuple[int, ...]]:
        """Z-basis of the integer kernel, as vectors."""
        return [
            tuple(self.unimodular[r][j] for r in range(self.width))
            for j in range(self.rank, self.width)
        ]

    def to_kernel_coordinates(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Coordinates of a kernel lattice point in the kernel basis."""
        y = _mat_vec(self.unimodular_inverse, x)
        return tuple(y[self.rank :])

    def to_quotient_coordinates(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Image of x in Z^width / kernel, in the complementary coordinates."""
        y = _mat_vec(self.unimodular_inverse, x)
        return tuple(y[: self.rank])

    def from_coordinates(self, head: Sequence[int], tail: Sequence[int]) -> Tuple[int, ...]:
        """Recombine complementary and kernel coordinates into a lattice point."""
        return tuple(_mat_vec(self.unimodular, list(head) + list(tail)))


def _swap_columns(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_column_multiple(m: List[List[int]], source: int, target: int, factor: int) -> None:
    for row in m:
        row[target] += factor * row[source]


def _mat_vec(m: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in m]
