"""
Tropical hypersurfaces in the min-plus convention.

trop(f)(v) = min over the terms a_u x^u of val(a_u) + <u, v>. The corner
locus is read off the regular subdivision of the Newton polytope induced by
lifting u to height val(a_u): every lower face F with at least two terms
gives the cell where exactly the terms of F achieve the minimum.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from adictrop.algebra.polynomial import Exponent, LaurentPolynomial, ResiduePolynomial
from adictrop.core.exactnum import QVector, RatLike, integral_direction, is_gamma_rational, pairing, to_rat
from adictrop.errors import DimensionError, RationalityError, ZeroPolynomialError
from adictrop.polyhedra.complexes import PolyhedralComplex
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import Polyhedron

logger = logging.getLogger(__name__)

TermSet = Tuple[Exponent, ...]


def _check_point(f: LaurentPolynomial, v: Sequence[RatLike]) -> Tuple[Fraction, ...]:
    if len(v) != f.n:
        raise DimensionError(f"point of length {len(v)} for a polynomial in {f.n} variables")
    return tuple(to_rat(x) for x in v)


def _minimizing_terms(f: LaurentPolynomial, v: Sequence[Fraction]) -> Tuple[Fraction, List[Exponent]]:
    values = [(c.valuation + pairing(e, v), e) for e, c in f.items()]
    low = min(value for value, _ in values)
    return low, [e for value, e in values if value == low]


def trop_value(f: LaurentPolynomial, v: Sequence[RatLike]) -> Fraction:
    """The exact minimum of val(a_u) + <u, v> over the terms of f.

    Raises:
        ZeroPolynomialError: If f is the zero polynomial
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no tropicalization")
    return _minimizing_terms(f, _check_point(f, v))[0]


def initial_form_at(f: LaurentPolynomial, v: Sequence[RatLike]) -> ResiduePolynomial:
    """Canonical initial form at any rational v, without the Gamma-rationality check."""
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no initial form")
    point = _check_point(f, v)
    _, winners = _minimizing_terms(f, point)
    residues = {e: f.coefficient(e).residue for e in winners}  # type: ignore[union-attr]
    return ResiduePolynomial(f.variables, residues, f.profile.residue).canonical()


def initial_form(f: LaurentPolynomial, v: Sequence[RatLike]) -> ResiduePolynomial:
    """Residues of the min-achieving terms at v, canonicalized.

    The exponents are shifted by their coordinatewise minimum and the
    polynomial is scaled so the lex-smallest exponent has coefficient 1, so
    two initial forms describe the same initial degeneration exactly when
    they are equal.

    Raises:
        RationalityError: If v is not Gamma-rational
        ZeroPolynomialError: If f is the zero polynomial
    """
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no initial form")
    point = _check_point(f, v)
    if not is_gamma_rational(point, f.profile.value_group):
        raise RationalityError(f"{QVector(point)} is not {f.profile.value_group}-rational")
    return initial_form_at(f, point)


@dataclass
class TropicalHypersurface:
    """The corner locus of f together with its dual subdivision.

    Attributes:
        polynomial: The polynomial f
        complex: Cells of the corner locus, pure of dimension n - 1 (empty for monomials)
        dual_cells: Cell index -> exponents of the terms achieving the minimum on it
        subdivision: All cells of the regular subdivision, as sets of exponents
    """

    polynomial: LaurentPolynomial
    complex: PolyhedralComplex
    dual_cells: Dict[int, TermSet] = field(default_factory=dict)
    subdivision: Tuple[TermSet, ...] = ()

    @property
    def n(self) -> int:
        return self.polynomial.n

    def is_empty(self) -> bool:
        return len(self.complex) == 0

    def contains(self, v: Sequence[RatLike]) -> bool:
        """Exact membership of a rational point in the support."""
        if len(v) != self.n:
            raise DimensionError(f"point of length {len(v)} in dimension {self.n}")
        return self.complex.support_contains(v)

    def subdivision_cells(self) -> Tuple[TermSet, ...]:
        return self.subdivision

    def dual_face(self, index: int) -> Polyhedron:
        """Face of the subdivision dual to a cell of the corner locus."""
        return Polyhedron.from_points(self.dual_cells[index], ambient_dim=self.n)

    def dual_lattice_length(self, index: int) -> int:
        """Lattice length of the dual edge of a codimension-one cell."""
        terms = self.dual_cells[index]
        best = 0
        for i, a in enumerate(terms):
            for b in terms[i + 1 :]:
                g = 0
                for x, y in zip(a, b):
                    g = math.gcd(g, x - y)
                best = max(best, g)
        return best

    def balancing_defect(self, vertex_index: int) -> Tuple[int, ...]:
        """Weighted sum of primitive edge directions leaving a vertex; zero when balanced."""
        vertex = self.complex.cells[vertex_index]
        if vertex.dim != 0:
            raise DimensionError(f"cell {vertex_index} is not a vertex")
        origin = vertex.vertices[0]
        total = [0] * self.n
        for j in self.complex.cofaces_of(vertex_index):
            edge = self.complex.cells[j]
            if edge.dim != 1:
                continue
            direction = integral_direction(list(edge.barycenter() - origin))
            weight = self.dual_lattice_length(j)
            total = [t + weight * d for t, d in zip(total, direction)]
        return tuple(total)

    def __repr__(self) -> str:
        return f"TropicalHypersurface({self.polynomial.to_text()!r}, cells={len(self.complex)})"


def _lower_faces(f: LaurentPolynomial) -> List[TermSet]:
    """Term sets of the lower faces of the lifted Newton polytope."""
    n = f.n
    lifted = {e: tuple(Fraction(x) for x in e) + (c.valuation, Fraction(1)) for e, c in f.items()}
    vertical = tuple([0] * n + [1, 0])
    hull = Cone.from_generators(list(lifted.values()) + [vertical], ambient_dim=n + 2)
    faces = []
    for face in hull.faces():
        if face.dim == 0 or face.contains(vertical):
            continue
        terms = tuple(e for e in f.support() if face.contains(lifted[e]))
        faces.append(terms)
    faces.sort(key=lambda terms: (len(terms), terms))
    return faces


def _cell_of_face(f: LaurentPolynomial, terms: TermSet) -> Polyhedron:
    """The region where exactly the given terms achieve the minimum (closed)."""
    coefficients = dict(f.items())
    base = terms[0]
    base_val = coefficients[base].valuation

    def row(e: Exponent):
        return tuple(a - b for a, b in zip(e, base)), coefficients[e].valuation - base_val

    equalities = [row(e) for e in terms[1:]]
    inequalities = [row(e) for e in f.support() if e not in terms]
    return Polyhedron.from_halfspaces(inequalities, equalities, ambient_dim=f.n)


def tropicalize(f: LaurentPolynomial) -> TropicalHypersurface:
    """Corner locus of f with the duality map to its regular subdivision.

    A polynomial with fewer than two terms has an empty tropical hypersurface.
    """
    n = f.n
    if len(f) < 2:
        logger.debug("Fewer than two terms: empty tropical hypersurface")
        subdivision = (tuple(f.support()),) if len(f) == 1 else ()
        return TropicalHypersurface(f, PolyhedralComplex([], ambient_dim=n), {}, subdivision)

    faces = _lower_faces(f)
    cells: Dict[Polyhedron, TermSet] = {}
    for terms in faces:
        if len(terms) >= 2:
            cells[_cell_of_face(f, terms)] = terms
    complex_ = PolyhedralComplex(cells, ambient_dim=n, validate=False)
    dual_cells = {i: cells[c] for i, c in enumerate(complex_.cells) if c in cells}
    logger.info(
        f"Tropicalized {len(f)} terms: {len(complex_.cells)} cells, "
        f"{len(faces)} subdivision faces"
    )
    return TropicalHypersurface(f, complex_, dual_cells, tuple(faces))
