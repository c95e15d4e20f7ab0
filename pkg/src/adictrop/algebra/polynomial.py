"""
Laurent polynomials over a valued field and over its residue field.

A coefficient a of K is kept only as (val(a), leading residue). Polynomials
are immutable; terms are stored sorted by exponent so that equality,
hashing and printing are all canonical.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from adictrop.algebra.field import FieldProfile, ResidueField, Scalar
from adictrop.core.exactnum import LatticeVector, RatLike, format_rat, parse_rat, to_rat
from adictrop.errors import (
    DimensionError,
    FieldProfileError,
    ParseError,
    RationalityError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

_STANDARD_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class ValuedCoefficient:
    """A nonzero element of K seen through its valuation and leading residue.

    Attributes:
        valuation: val(a) in Gamma
        residue: Leading residue in k, nonzero
    """

    valuation: Fraction
    residue: Scalar

    def __post_init__(self):
        object.__setattr__(self, "valuation", to_rat(self.valuation))


def default_variables(n: int) -> Tuple[str, ...]:
    if n <= len(_STANDARD_NAMES):
        return _STANDARD_NAMES[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def order_variables(names: Iterable[str]) -> Tuple[str, ...]:
    """Deterministic variable order: x, y, z, w first, then natural sort."""
    unique = set(names)
    if unique <= set(_STANDARD_NAMES):
        return tuple(v for v in _STANDARD_NAMES if v in unique)

    def natural(name: str):
        return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]

    return tuple(sorted(unique, key=natural))


def format_monomial(variables: Sequence[str], exponent: Exponent) -> str:
    parts = []
    for name, e in zip(variables, exponent):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _term_order(exponent: Exponent) -> Tuple:
    return (-sum(exponent), tuple(-e for e in exponent))


def _join_terms(chunks: List[Tuple[bool, str]]) -> str:
    if not chunks:
        return "0"
    out = ""
    for i, (negative, body) in enumerate(chunks):
        if i == 0:
            out = ("-" if negative else "") + body
        else:
            out += (" - " if negative else " + ") + body
    return out


class LaurentPolynomial:
    """f = sum of a_u x^u with finitely many nonzero a_u in K.

    Attributes:
        variables: Names of the n variables
        profile: Field profile of K
    """

    __slots__ = ("variables", "profile", "_terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Sequence[int], ValuedCoefficient],
        profile: Optional[FieldProfile] = None,
    ):
        self.variables = tuple(variables)
        self.profile = profile or FieldProfile()
        n = len(self.variables)
        if n < 1:
            raise DimensionError("a Laurent polynomial needs at least one variable")
        if len(set(self.variables)) != n:
            raise DimensionError(f"duplicate variable names in {self.variables}")
        residue = self.profile.residue
        normalized: Dict[Exponent, ValuedCoefficient] = {}
        for exp, coeff in terms.items():
            key = tuple(int(e) for e in exp)
            if len(key) != n:
                raise DimensionError(f"exponent {key} does not match {n} variables")
            if key in normalized:
                raise ParseError(f"duplicate exponent {key}")
            if not self.profile.value_group.contains(coeff.valuation):
                raise RationalityError(
                    f"valuation {format_rat(coeff.valuation)} is not in {self.profile.value_group}"
                )
            res = residue.element(coeff.residue)
            if residue.is_zero(res):
                raise ParseError(f"zero residue at exponent {key}")
            normalized[key] = ValuedCoefficient(coeff.valuation, res)
        self._terms: Tuple[Tuple[Exponent, ValuedCoefficient], ...] = tuple(sorted(normalized.items()))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def terms(self) -> Dict[LatticeVector, ValuedCoefficient]:
        return {LatticeVector(e): c for e, c in self._terms}

    def items(self) -> Tuple[Tuple[Exponent, ValuedCoefficient], ...]:
        return self._terms

    def support(self) -> List[Exponent]:
        return [e for e, _ in self._terms]

    def coefficient(self, exponent: Sequence[int]) -> Optional[ValuedCoefficient]:
        key = tuple(exponent)
        for e, c in self._terms:
            if e == key:
                return c
        return None

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def multiply_by_monomial(self, shift: Sequence[int], valuation: RatLike = 0) -> "LaurentPolynomial":
        """chi^w * f (optionally times an element of valuation ``valuation``)."""
        if len(shift) != self.n:
            raise DimensionError(f"shift of length {len(shift)} for {self.n} variables")
        extra = to_rat(valuation)
        terms = {
            tuple(a + b for a, b in zip(e, shift)): ValuedCoefficient(c.valuation + extra, c.residue)
            for e, c in self._terms
        }
        return LaurentPolynomial(self.variables, terms, self.profile)

    def to_text(self) -> str:
        """Canonical text form; parsing it gives back an equal polynomial."""
        residue = self.profile.residue
        chunks = []
        for exp, coeff in sorted(self._terms, key=lambda item: _term_order(item[0])):
            negative, magnitude = _split_sign(residue, coeff.residue)
            factors = []
            monomial = format_monomial(self.variables, exp)
            if magnitude != "1" or (not monomial and coeff.valuation == 0):
                factors.append(magnitude)
            if coeff.valuation != 0:
                factors.append(format_uniformizer(self.profile.uniformizer, coeff.valuation))
            if monomial:
                factors.append(monomial)
            chunks.append((negative, "*".join(factors)))
        return _join_terms(chunks)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form {"vars": [...], "terms": [{"exp", "val", "res"}]}."""
        residue = self.profile.residue
        return {
            "vars": list(self.variables),
            "terms": [
                {"exp": list(e), "val": format_rat(c.valuation), "res": residue.format(c.residue)}
                for e, c in self._terms
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], profile: Optional[FieldProfile] = None) -> "LaurentPolynomial":
        profile = profile or FieldProfile()
        try:
            variables = data["vars"]
            raw_terms = data["terms"]
        except KeyError as exc:
            raise ParseError(f"polynomial JSON is missing {exc.args[0]!r}") from None
        terms: Dict[Exponent, ValuedCoefficient] = {}
        for item in raw_terms:
            exp = tuple(int(e) for e in item["exp"])
            if exp in terms:
                raise ParseError(f"duplicate exponent {exp} in polynomial JSON")
            terms[exp] = ValuedCoefficient(parse_rat(str(item["val"])), parse_rat(str(item["res"])))
        try:
            return cls(variables, terms, profile)
        except (ValueError, FieldProfileError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (
            self.variables == other.variables
            and self._terms == other._terms
            and self.profile == other.profile
        )

    def __hash__(self) -> int:
        return hash((self.variables, self._terms, self.profile))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_text()!r}, vars={self.variables})"


def _split_sign(residue: ResidueField, value: Scalar) -> Tuple[bool, str]:
    if residue.characteristic == 0:
        q = Fraction(value)
        return q < 0, format_rat(abs(q))
    return False, residue.format(value)


def format_uniformizer(symbol: str, valuation: Fraction) -> str:
    if valuation == 1:
        return symbol
    if valuation.denominator == 1:
        return f"{symbol}^{valuation.numerator}"
    return f"{symbol}^({format_rat(valuation)})"


class ResiduePolynomial:
    """A Laurent polynomial over the residue field k.

    Attributes:
        variables: Names of the variables
        field: The residue field
    """

    __slots__ = ("variables", "field", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], Scalar], field: ResidueField):
        self.variables = tuple(variables)
        self.field = field
        cleaned: Dict[Exponent, Scalar] = {}
        for exp, value in terms.items():
            key = tuple(int(e) for e in exp)
            if len(key) != len(self.variables):
                raise DimensionError(f"exponent {key} does not match {len(self.variables)} variables")
            element = field.element(value)
            if not field.is_zero(element):
                cleaned[key] = element
        self._terms: Tuple[Tuple[Exponent, Scalar], ...] = tuple(sorted(cleaned.items()))

    @property
    def terms(self) -> Dict[LatticeVector, Scalar]:
        return {LatticeVector(e): c for e, c in self._terms}

    def items(self) -> Tuple[Tuple[Exponent, Scalar], ...]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def canonical(self) -> "ResiduePolynomial":
        """Shift exponents by the coordinatewise minimum and make the lex-first coefficient 1."""
        if not self._terms:
            return self
        n = len(self.variables)
        low = [min(e[i] for e, _ in self._terms) for i in range(n)]
        shifted = {tuple(a - b for a, b in zip(e, low)): c for e, c in self._terms}
        lead = shifted[min(shifted)]
        scale = self.field.inv(lead)
        return ResiduePolynomial(
            self.variables, {e: self.field.mul(c, scale) for e, c in shifted.items()}, self.field
        )

    def is_linear(self) -> bool:
        """Every exponent has total degree at most one and all entries nonnegative."""
        return all(min(e, default=0) >= 0 and sum(e) <= 1 for e, _ in self._terms)

    def to_sympy(self):
        """The polynomial as a sympy expression in its variables."""
        import sympy

        symbols = [sympy.Symbol(v) for v in self.variables]
        expr = sympy.Integer(0)
        for exp, value in self._terms:
            q = Fraction(value)
            term = sympy.Rational(q.numerator, q.denominator)
            for s, e in zip(symbols, exp):
                term *= s**e
            expr += term
        return expr, symbols

    def to_text(self) -> str:
        chunks = []
        for exp, value in sorted(self._terms, key=lambda item: _term_order(item[0])):
            negative, magnitude = _split_sign(self.field, value)
            monomial = format_monomial(self.variables, exp)
            if not monomial:
                body = magnitude
            elif magnitude == "1":
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            chunks.append((negative, body))
        return _join_terms(chunks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vars": list(self.variables),
            "terms": [{"exp": list(e), "res": self.field.format(c)} for e, c in self._terms],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResiduePolynomial):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.field, self._terms))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ResiduePolynomial({self.to_text()!r})"


def newton_polytope(f: LaurentPolynomial):
    """Convex hull of the exponent vectors of f, as a lattice polytope in M_Q.

    Raises:
        ZeroPolynomialError: If f is the zero polynomial
    """
    from adictrop.polyhedra.polyhedron import Polyhedron

    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no Newton polytope")
    return Polyhedron.from_points(f.support(), ambient_dim=f.n)
