"""
Residue fields and field profiles.

A valued field K is described only through the data adictrop needs: its
residue field k (the rationals or a prime field), its value group Gamma and
the symbol used to print the uniformizer.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import sympy

from adictrop.core.exactnum import RatLike, ValueGroup, format_rat, to_rat
from adictrop.errors import FieldProfileError

Scalar = Union[int, Fraction]

_PRIME_FIELD = re.compile(r"^(?:F|GF|F_)\(?(\d+)\)?$")


@dataclass(frozen=True)
class ResidueField:
    """The residue field k: Q when characteristic is 0, F_p otherwise.

    Attributes:
        characteristic: 0 or a prime p
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 2 or not sympy.isprime(p)):
            raise FieldProfileError(f"{p} is not prime")

    @classmethod
    def parse(cls, descriptor: str) -> "ResidueField":
        """Read "Q", "QQ", "F5", "F_5" or "GF(5)"."""
        text = descriptor.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        match = _PRIME_FIELD.match(text)
        if not match:
            raise FieldProfileError(f"unknown residue field {descriptor!r}")
        return cls(int(match.group(1)))

    @property
    def descriptor(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def element(self, value: RatLike) -> Scalar:
        """Image of a rational literal in k.

        Raises:
            FieldProfileError: If the denominator vanishes in k
        """
        q = to_rat(value)
        p = self.characteristic
        if p == 0:
            return q
        if q.denominator % p == 0:
            raise FieldProfileError(f"{format_rat(q)} has no image in F{p}")
        return q.numerator * pow(q.denominator, -1, p) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.characteristic == 0:
            return Fraction(a) + Fraction(b)
        return (int(a) + int(b)) % self.characteristic

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.characteristic == 0:
            return Fraction(a) * Fraction(b)
        return int(a) * int(b) % self.characteristic

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("zero has no inverse")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.characteristic)

    def neg(self, a: Scalar) -> Scalar:
        if self.characteristic == 0:
            return -Fraction(a)
        return -int(a) % self.characteristic

    def is_zero(self, a: Scalar) -> bool:
        if self.characteristic == 0:
            return a == 0
        return int(a) % self.characteristic == 0

    def format(self, a: Scalar) -> str:
        if self.characteristic == 0:
            return format_rat(Fraction(a))
        return str(int(a) % self.characteristic)

    def __str__(self) -> str:
        return self.descriptor


@dataclass(frozen=True)
class FieldProfile:
    """Residue field, value group and uniformizer symbol of K.

    Attributes:
        residue: The residue field k
        value_group: Gamma = (1/d)Z
        uniformizer: Symbol printed for an element of valuation 1, e.g. "t" or "p"
    """

    residue: ResidueField = ResidueField(0)
    value_group: ValueGroup = ValueGroup(1)
    uniformizer: str = "t"

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.uniformizer):
            raise FieldProfileError(f"uniformizer symbol {self.uniformizer!r} is not an identifier")

    @classmethod
    def from_descriptor(cls, field: str = "Q", gamma: int = 1, uniformizer: str = "t") -> "FieldProfile":
        return cls(ResidueField.parse(field), ValueGroup(gamma), uniformizer)

    def __str__(self) -> str:
        return f"(k={self.residue}, Gamma={self.value_group}, {self.uniformizer})"
