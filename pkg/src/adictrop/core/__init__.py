"""Exact rational arithmetic, lattice vectors and linear algebra."""

from adictrop.core.exactnum import (
    LatticeVector,
    QVector,
    ValueGroup,
    format_rat,
    integral_direction,
    is_gamma_rational,
    pairing,
    parse_rat,
    primitive,
    to_rat,
)
from adictrop.core.linalg import ColumnReduction, determinant, inverse, nullspace, rank

__all__ = [
    "LatticeVector",
    "QVector",
    "ValueGroup",
    "format_rat",
    "integral_direction",
    "is_gamma_rational",
    "pairing",
    "parse_rat",
    "primitive",
    "to_rat",
    "ColumnReduction",
    "determinant",
    "inverse",
    "nullspace",
    "rank",
]
