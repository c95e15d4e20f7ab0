"""
Text grammar for Laurent polynomials over a valued field.

    poly     := [sign] term (sign term)*
    term     := factor (['*'] factor)*
    factor   := NUMBER | T ['^' exponent] | VAR ['^' integer]
    exponent := [sign] INT | '(' [sign] INT ['/' INT] ')'

T is the uniformizer symbol of the field profile. Each T^k contributes the
valuation k, NUMBER literals (``3`` or ``3/4``) contribute the residue.
Like terms are merged when the lower valuation dominates; when two terms
share exponent and valuation and their residues cancel the input is
rejected, since only leading residues are stored.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from adictrop.algebra.field import FieldProfile, Scalar
from adictrop.algebra.polynomial import LaurentPolynomial, ValuedCoefficient, order_variables
from adictrop.core.exactnum import format_rat
from adictrop.errors import CancellationAmbiguityError, FieldProfileError, ParseError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<number>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


@dataclass
class _Term:
    position: int
    sign: int
    coefficient: Fraction
    valuation: Fraction
    powers: Dict[str, int]


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, uniformizer: str):
        self.tokens = _tokenize(text)
        self.index = 0
        self.uniformizer = uniformizer

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise ParseError(f"expected {text!r}, found {self.current.text or 'end of input'!r}", self.current.position)

    def parse(self) -> List[_Term]:
        if self.current.kind == "end":
            raise ParseError("empty polynomial", 0)
        terms = []
        sign = 1
        if self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        terms.append(self.term(sign))
        while self.current.kind == "op" and self.current.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
            terms.append(self.term(sign))
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.position)
        return terms

    def term(self, sign: int) -> _Term:
        term = _Term(self.current.position, sign, Fraction(1), Fraction(0), {})
        self.factor(term)
        while True:
            if self.accept("*"):
                self.factor(term)
            elif self.current.kind in ("number", "ident"):
                self.factor(term)
            else:
                return term

    def factor(self, term: _Term) -> None:
        token = self.current
        if token.kind == "number":
            self.advance()
            term.coefficient *= Fraction(token.text)
            return
        if token.kind != "ident":
            raise ParseError(f"expected a factor, found {token.text or 'end of input'!r}", token.position)
        self.advance()
        if token.text == self.uniformizer:
            term.valuation += self.valuation_exponent() if self.accept("^") else Fraction(1)
            return
        power = self.integer_exponent() if self.accept("^") else 1
        term.powers[token.text] = term.powers.get(token.text, 0) + power

    def signed_integer(self) -> int:
        negative = False
        if self.current.kind == "op" and self.current.text in "+-":
            negative = self.advance().text == "-"
        token = self.current
        if token.kind != "number" or "/" in token.text:
            raise ParseError(f"expected an integer exponent, found {token.text or 'end of input'!r}", token.position)
        self.advance()
        return -int(token.text) if negative else int(token.text)

    def integer_exponent(self) -> int:
        if self.accept("("):
            value = self.signed_integer()
            self.expect(")")
            return value
        return self.signed_integer()

    def valuation_exponent(self) -> Fraction:
        if not self.accept("("):
            return Fraction(self.signed_integer())
        negative = False
        if self.current.kind == "op" and self.current.text in "+-":
            negative = self.advance().text == "-"
        token = self.current
        if token.kind != "number":
            raise ParseError(f"expected a rational exponent, found {token.text or 'end of input'!r}", token.position)
        self.advance()
        value = Fraction(token.text)
        if self.accept("/"):
            denominator = self.signed_integer()
            if denominator == 0:
                raise ParseError("zero denominator in exponent", token.position)
            value /= denominator
        self.expect(")")
        return -value if negative else value


def parse_poly(
    text: str,
    profile: Optional[FieldProfile] = None,
    variables: Optional[Sequence[str]] = None,
) -> LaurentPolynomial:
    """Parse the text grammar into a canonical LaurentPolynomial.

    Args:
        text: Polynomial text, e.g. ``"t^2*x^-1 + 3"``
        profile: Field profile; defaults to k = Q, Gamma = Z, uniformizer "t"
        variables: Fixed variable order; inferred from the text when omitted

    Raises:
        ParseError: On syntax errors, residues that vanish in k or valuations outside Gamma
        CancellationAmbiguityError: When like terms of equal valuation cancel
    """
    profile = profile or FieldProfile()
    terms = _Parser(text, profile.uniformizer).parse()

    names = {name for term in terms for name, e in term.powers.items()}
    if variables is not None:
        order = tuple(variables)
        unknown = names - set(order)
        if unknown:
            first = min(t.position for t in terms if set(t.powers) & unknown)
            raise ParseError(f"unknown variable(s) {sorted(unknown)}", first)
    else:
        order = order_variables(names) or ("x",)

    residue = profile.residue
    merged: Dict[Tuple[int, ...], Tuple[Fraction, Scalar]] = {}
    for term in terms:
        try:
            value = residue.element(term.sign * term.coefficient)
        except FieldProfileError as exc:
            raise ParseError(str(exc), term.position) from None
        if residue.is_zero(value):
            raise ParseError(f"coefficient vanishes in {residue}", term.position)
        if not profile.value_group.contains(term.valuation):
            raise ParseError(
                f"valuation {format_rat(term.valuation)} is not in {profile.value_group}", term.position
            )
        exponent = tuple(term.powers.get(name, 0) for name in order)
        if exponent not in merged:
            merged[exponent] = (term.valuation, value)
            continue
        valuation, previous = merged[exponent]
        if term.valuation < valuation:
            merged[exponent] = (term.valuation, value)
        elif term.valuation == valuation:
            total = residue.add(previous, value)
            if residue.is_zero(total):
                raise CancellationAmbiguityError(
                    "leading terms of like monomials cancel", term.position
                )
            merged[exponent] = (valuation, total)

    poly = LaurentPolynomial(
        order, {e: ValuedCoefficient(val, res) for e, (val, res) in merged.items()}, profile
    )
    logger.debug(f"Parsed {len(poly)} term(s) in {len(order)} variable(s)")
    return poly
