"""
Metrized complexes of tropical plane curves and finite-stage point counts.

A metrized complex here is the graph of a one-dimensional complex refining
Trop(f), with lattice lengths on bounded edges, infinite legs on rays and
the canonical initial form attached to every vertex.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import sympy
from sympy.polys.polyerrors import PolificationFailed

from adictrop.algebra.polynomial import LaurentPolynomial, ResiduePolynomial
from adictrop.core.exactnum import QVector, integral_direction, is_gamma_rational
from adictrop.errors import ComplexInvalidError, DimensionError, RationalityError
from adictrop.polyhedra.complexes import PolyhedralComplex, restrict_complex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tropical.exploded import exploded_fibration
from adictrop.tropical.hypersurface import initial_form_at, tropicalize

logger = logging.getLogger(__name__)


def lattice_length(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """The positive rational l with b - a = l * (primitive integral direction)."""
    diff = [Fraction(y) - Fraction(x) for x, y in zip(a, b)]
    if not any(diff):
        raise DimensionError("a segment needs two distinct endpoints")
    direction = integral_direction(diff)
    i = next(k for k, d in enumerate(direction) if d != 0)
    return diff[i] / direction[i]


@dataclass
class MetrizedEdge:
    """A bounded edge (finite length) or a leg (length None, meaning infinity).

    Attributes:
        source: Vertex position of the start
        target: Vertex position of the end, None for legs
        length: Lattice length, None for legs
        direction: Primitive direction from source
        cell_index: Index of the 1-cell in the base complex
        fiber: Canonical initial form on the open edge
    """

    source: int
    target: Optional[int]
    length: Optional[Fraction]
    direction: Tuple[int, ...]
    cell_index: int
    fiber: ResiduePolynomial

    @property
    def is_leg(self) -> bool:
        return self.target is None


@dataclass
class MetrizedComplex:
    """Graph with lattice lengths whose vertices carry residue curves.

    Attributes:
        polynomial: The curve's equation f
        base: The one-dimensional complex the graph is read from
        vertices: Vertex points, in base cell order
        decorations: Canonical initial form at each vertex
        edges: Bounded edges and legs, in base cell order
        schon: Caller's assertion that the curve is schoen; bounded edges then
            carry two residue components meeting in a point
    """

    polynomial: LaurentPolynomial
    base: PolyhedralComplex
    vertices: List[QVector] = field(default_factory=list)
    decorations: List[ResiduePolynomial] = field(default_factory=list)
    edges: List[MetrizedEdge] = field(default_factory=list)
    schon: bool = False

    def bounded_edges(self) -> List[MetrizedEdge]:
        return [e for e in self.edges if not e.is_leg]

    def legs(self) -> List[MetrizedEdge]:
        return [e for e in self.edges if e.is_leg]

    def total_length(self) -> Fraction:
        return sum((e.length for e in self.bounded_edges()), Fraction(0))  # type: ignore[misc]

    def edge_components(self, edge: MetrizedEdge) -> Optional[int]:
        """Residue components over a bounded edge of a schoen curve (two meeting in a point)."""
        if edge.is_leg or not self.schon:
            return None
        return 2

    def graph(self) -> nx.MultiGraph:
        """networkx view; legs end at auxiliary nodes ("leg", i)."""
        g = nx.MultiGraph()
        for i, (v, dec) in enumerate(zip(self.vertices, self.decorations)):
            g.add_node(i, point=str(v), decoration=dec.to_text())
        for k, e in enumerate(self.edges):
            if e.is_leg:
                g.add_node(("leg", k), point=None)
                g.add_edge(e.source, ("leg", k), length=None, direction=e.direction)
            else:
                g.add_edge(e.source, e.target, length=e.length, direction=e.direction)
        return g


def build_metrized_complex(
    f: LaurentPolynomial,
    refinement: Optional[PolyhedralComplex] = None,
    schon: bool = False,
) -> MetrizedComplex:
    """Metrized complex of the plane curve V(f) over a refinement of Trop(f).

    Raises:
        DimensionError: If f is not in two variables
        RationalityError: If a vertex of Trop(f) or of the refinement is not Gamma-rational
        RefinementError: If the refinement does not cover Trop(f)
        ComplexInvalidError: If some edge has no vertex (the curve's tropicalization is a line)
    """
    if f.n != 2:
        raise DimensionError(f"metrized complexes need a plane curve, got {f.n} variables")
    group = f.profile.value_group
    trop = tropicalize(f)
    base = trop.complex
    if refinement is not None:
        if not refinement.is_gamma_rational(group):
            raise RationalityError(f"refinement is not {group}-rational")
        if not trop.is_empty():
            base = restrict_complex(refinement, trop.complex)
    if base.dim > 1:
        raise ComplexInvalidError(f"restriction to Trop(f) has dimension {base.dim}")
    if not base.is_gamma_rational(group):
        outside = [str(v) for v in base.vertices if not is_gamma_rational(v, group)]
        raise RationalityError(f"vertices {outside} of Trop(f) are not {group}-rational")

    mc = MetrizedComplex(f, base, schon=schon)
    position = {}
    for index in base.indices_of_dim(0):
        v = base.cells[index].vertices[0]
        position[index] = len(mc.vertices)
        mc.vertices.append(v)
        mc.decorations.append(initial_form_at(f, v))

    for index in base.indices_of_dim(1):
        cell: Polyhedron = base.cells[index]
        ends = [position[i] for i in base.faces_of(index) if i in position]
        if not ends:
            raise ComplexInvalidError(f"edge {index} has no vertex; refine the complex first")
        fiber = initial_form_at(f, cell.barycenter())
        source = ends[0]
        origin = mc.vertices[source]
        if len(ends) == 2:
            target = mc.vertices[ends[1]]
            mc.edges.append(
                MetrizedEdge(
                    source,
                    ends[1],
                    lattice_length(origin, target),
                    integral_direction(list(target - origin)),
                    index,
                    fiber,
                )
            )
        else:
            mc.edges.append(MetrizedEdge(source, None, None, tuple(cell.rays[0]), index, fiber))

    logger.info(
        f"Metrized complex: {len(mc.vertices)} vertices, {len(mc.bounded_edges())} edges, "
        f"{len(mc.legs())} legs"
    )
    return mc


@dataclass
class CellCount:
    """One row of the finite-stage point table.

    Attributes:
        index: Cell index in the base complex
        dim: Cell dimension
        fiber: Canonical initial form over the cell
        components: Number of residue components, None when unfactored
    """

    index: int
    dim: int
    fiber: ResiduePolynomial
    components: Optional[int]

    @property
    def status(self) -> str:
        return "unfactored" if self.components is None else "factored"


def _univariate_factor_count(coefficient_ratio: Fraction, degree: int, characteristic: int) -> int:
    """Distinct irreducible factors of T^degree - c over the residue field."""
    T = sympy.Symbol("T")
    c = sympy.Rational(coefficient_ratio.numerator, coefficient_ratio.denominator)
    if characteristic:
        _, factors = sympy.factor_list(T**degree - c, T, modulus=characteristic)
    else:
        _, factors = sympy.factor_list(T**degree - c, T)
    return len({sympy.expand(fac) for fac, _ in factors if fac.has(T)})


def fiber_components(fiber: ResiduePolynomial) -> Optional[int]:
    """Components of V(fiber) in the residue torus, or None when it does not split by inspection.

    Linear forms are irreducible. A binomial c1 x^a + c2 x^b cuts out
    x^w = zeta with zeta^g = -c1/c2, where g is the gcd of b - a; its
    components are the irreducible factors of T^g + c1/c2. Anything else is
    factored with sympy and counted when every factor is linear or a binomial.
    """
    field_ = fiber.field
    terms = fiber.items()
    if len(terms) < 2:
        return 0
    if fiber.is_linear():
        return 1
    if len(terms) == 2:
        (a, c1), (b, c2) = terms
        g = 0
        for x, y in zip(a, b):
            g = gcd(g, y - x)
        ratio = field_.mul(field_.neg(c1), field_.inv(c2))
        return _univariate_factor_count(Fraction(ratio), g, field_.characteristic)

    expr, symbols = fiber.canonical().to_sympy()
    try:
        if field_.characteristic:
            _, factors = sympy.factor_list(expr, *symbols, modulus=field_.characteristic)
        else:
            _, factors = sympy.factor_list(expr, *symbols)
    except (NotImplementedError, PolificationFailed):
        logger.warning(f"Could not factor {fiber} over {field_}")
        return None
    distinct = set()
    for fac, _ in factors:
        poly = sympy.Poly(fac, *symbols)
        if len(poly.monoms()) < 2:
            continue
        if poly.total_degree() > 1 and len(poly.monoms()) > 2:
            return None
        distinct.add(sympy.expand(fac))
    return len(distinct)


def adic_point_count(
    f: LaurentPolynomial, refinement: Optional[PolyhedralComplex] = None
) -> List[CellCount]:
    """Cell -> (dimension, fiber, residue components) over Trop(f) or a refinement."""
    data = exploded_fibration(f, refinement)
    rows = []
    for index, cell, fiber in data.rows():
        count = fiber_components(fiber)
        if count is None:
            logger.warning(f"Fiber {fiber} over cell {index} reported unfactored")
        rows.append(CellCount(index, cell.dim, fiber, count))
    return rows
