"""
Exact numbers, lattice vectors and value groups.

Rationals are ``fractions.Fraction`` throughout; nothing in adictrop ever
touches a float. Points of N_Q are QVectors, characters u in M are
LatticeVectors, and the value group is Gamma = (1/d)Z for a positive d.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple, Union

from adictrop.errors import DimensionError, FieldProfileError, ParseError

Rat = Fraction
RatLike = Union[int, Fraction, str]


def to_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Raises:
        ParseError: If a string is not a valid rational literal
        TypeError: For floats and other unsupported types
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rat(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    stripped = text.strip()
    num, sep, den = stripped.partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not a rational literal: {text!r}") from None
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rat(value: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (lowest terms, positive denominator)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries. Zero stays zero."""
    g = 0
    for x in vector:
        g = math.gcd(g, x)
    if g <= 1:
        return tuple(int(x) for x in vector)
    return tuple(x // g for x in vector)


def integral_direction(vector: Sequence[Fraction]) -> Tuple[int, ...]:
    """Primitive integer vector pointing the same way as a rational vector."""
    lcm = 1
    for x in vector:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    return primitive([int(Fraction(x) * lcm) for x in vector])


def dot(u: Sequence, v: Sequence):
    """Exact dot product of two equal-length sequences."""
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class ValueGroup:
    """The value group Gamma = (1/d)Z.

    Attributes:
        denominator: The positive integer d
    """

    denominator: int = 1

    def __post_init__(self):
        if not isinstance(self.denominator, int) or self.denominator < 1:
            raise FieldProfileError(f"value group denominator must be >= 1, got {self.denominator}")

    def contains(self, value: RatLike) -> bool:
        """Membership test: r is in Gamma iff d*r is an integer."""
        return (to_rat(value) * self.denominator).denominator == 1

    def join(self, other: "ValueGroup") -> "ValueGroup":
        """Smallest value group containing both."""
        d = self.denominator * other.denominator // math.gcd(self.denominator, other.denominator)
        return ValueGroup(d)

    @classmethod
    def generated_by(cls, values: Iterable[RatLike]) -> "ValueGroup":
        """Smallest (1/d)Z containing every given rational."""
        d = 1
        for value in values:
            q = to_rat(value).denominator
            d = d * q // math.gcd(d, q)
        return cls(d)

    def __str__(self) -> str:
        if self.denominator == 1:
            return "Z"
        return f"(1/{self.denominator})Z"


@dataclass(frozen=True, order=True)
class LatticeVector:
    """An integral vector u in M or N.

    Attributes:
        coords: Integer coordinates; the length is the ambient rank
    """

    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        for x in coords:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    continue
                raise TypeError(f"lattice coordinates must be integers, got {x!r}")
        object.__setattr__(self, "coords", tuple(int(x) for x in coords))

    @classmethod
    def of(cls, *coords: int) -> "LatticeVector":
        return cls(tuple(coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> int:
        return self.coords[index]

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _check_lengths(self, other)
        return LatticeVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        _check_lengths(self, other)
        return LatticeVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self))

    def scale(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def primitive(self) -> "LatticeVector":
        return LatticeVector(primitive(self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True, order=True)
class QVector:
    """A rational point v in N_Q.

    Attributes:
        coords: Fraction coordinates
    """

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(to_rat(x) for x in self.coords))

    @classmethod
    def of(cls, *coords: RatLike) -> "QVector":
        return cls(tuple(to_rat(x) for x in coords))

    @classmethod
    def parse(cls, text: str) -> "QVector":
        """Parse a comma-separated list such as "1/2,0"."""
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise ParseError(f"empty point: {text!r}")
        return cls(tuple(parse_rat(p) for p in parts))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __add__(self, other: Sequence) -> "QVector":
        _check_lengths(self, other)
        return QVector(tuple(a + to_rat(b) for a, b in zip(self, other)))

    def __sub__(self, other: Sequence) -> "QVector":
        _check_lengths(self, other)
        return QVector(tuple(a - to_rat(b) for a, b in zip(self, other)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self))

    def scale(self, k: RatLike) -> "QVector":
        k = to_rat(k)
        return QVector(tuple(k * a for a in self))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_strings(self) -> Tuple[str, ...]:
        return tuple(format_rat(a) for a in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(self.to_strings()) + ")"


def _check_lengths(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")


def pairing(u: Sequence[int], v: Sequence[RatLike]) -> Fraction:
    """The canonical pairing <u, v> between M and N_Q, computed exactly.

    Raises:
        DimensionError: If the vectors have different lengths
    """
    _check_lengths(u, v)
    return Fraction(sum(int(a) * to_rat(b) for a, b in zip(u, v)))


def is_gamma_rational(v: Sequence[RatLike], group: ValueGroup) -> bool:
    """True iff every coordinate of v lies in Gamma."""
    return all(group.contains(x) for x in v)
