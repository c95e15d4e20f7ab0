"""Residue fields, valued Laurent polynomials and their text grammar."""

from adictrop.algebra.field import FieldProfile, ResidueField
from adictrop.algebra.parser import parse_poly
from adictrop.algebra.polynomial import (
    LaurentPolynomial,
    ResiduePolynomial,
    ValuedCoefficient,
    default_variables,
    newton_polytope,
)

__all__ = [
    "FieldProfile",
    "ResidueField",
    "parse_poly",
    "LaurentPolynomial",
    "ResiduePolynomial",
    "ValuedCoefficient",
    "default_variables",
    "newton_polytope",
]
