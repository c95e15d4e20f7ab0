"""
Tilted semigroups and their Hilbert bases.

For a Gamma-admissible cone delta in N_Q x Q_{>=0} the tilted semigroup is

    S_delta = {(u, n) in M x Gamma : <u, v> + n c >= 0 for all (v, c) in delta}.

With Gamma = (1/d)Z, writing n = k/d turns this into the lattice points of
the dual of the cone spanned by the vectors (d v, c), so everything below is
integral. The unit group (lineality of the dual) is split off with
unimodular column reductions and the pointed part's Hilbert basis comes
from fundamental parallelepipeds of a pulling triangulation.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import floor
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from adictrop.algebra.polynomial import default_variables, format_monomial, format_uniformizer
from adictrop.core.exactnum import ValueGroup, dot
from adictrop.core.linalg import ColumnReduction, inverse, nullspace
from adictrop.errors import ConfigError, DimensionError
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import AdmissibleCone

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


class SemigroupElement(NamedTuple):
    """A character u in M together with a valuation n in Gamma."""

    u: IntVector
    n: Fraction

    def render(self, variables: Sequence[str], uniformizer: str = "t") -> str:
        """Monomial text such as "p*t^-1" (uniformizer power first)."""
        parts = []
        if self.n != 0:
            parts.append(format_uniformizer(uniformizer, self.n))
        monomial = format_monomial(variables, self.u)
        if monomial:
            parts.append(monomial)
        return "*".join(parts) or "1"

    def is_constant(self) -> bool:
        return not any(self.u)


def _sort_key(x: IntVector) -> Tuple:
    return (sum(abs(a) for a in x), x)


def _triangulate(cone: Cone) -> List[Tuple[IntVector, ...]]:
    """Pulling triangulation of a pointed cone into simplicial cones."""
    rays = cone.rays
    if len(rays) == cone.dim:
        return [rays]
    apex = rays[0]
    simplices = []
    for facet in cone.faces_of_dim(cone.dim - 1):
        if facet.contains(apex):
            continue
        for simplex in _triangulate(facet):
            simplices.append((apex,) + simplex)
    return simplices


def _parallelepiped_points(generators: Sequence[IntVector]) -> List[IntVector]:
    """Nonzero lattice points of the half-open parallelepiped spanned by a basis of Q^r."""
    r = len(generators)
    matrix = [[g[i] for g in generators] for i in range(r)]
    reduced = ColumnReduction(matrix, r).reduced
    bounds = [abs(reduced[i][i]) for i in range(r)]
    if all(b == 1 for b in bounds):
        return []
    inv = inverse(matrix)
    points = set()
    for x in product(*(range(b) for b in bounds)):
        coeffs = [sum(inv[i][j] * x[j] for j in range(r)) for i in range(r)]
        fractional = [c - floor(c) for c in coeffs]
        point = tuple(int(sum(matrix[i][j] * fractional[j] for j in range(r))) for i in range(r))
        if any(point):
            points.add(point)
    return sorted(points)


def pointed_hilbert_basis(cone: Cone) -> List[IntVector]:
    """Hilbert basis of the lattice points of a pointed, full-dimensional cone."""
    if cone.lineality or cone.equations:
        raise DimensionError("expected a pointed full-dimensional cone")
    if cone.dim == 0:
        return []
    candidates = set(cone.rays)
    for simplex in _triangulate(cone):
        candidates.update(_parallelepiped_points(simplex))
    ordered = sorted(candidates, key=_sort_key)
    basis = []
    for x in ordered:
        reducible = any(
            y != x and cone.contains(tuple(a - b for a, b in zip(x, y))) for y in ordered
        )
        if not reducible:
            basis.append(x)
    return basis


class _LatticeSplitting:
    """Coordinates on Z^D adapted to a cone sigma.

    Points of sigma lie in the saturated lattice of its span (first
    reduction); modulo the saturated lattice of its lineality (second
    reduction) sigma becomes a pointed full-dimensional cone in Z^r.
    """

    def __init__(self, sigma: Cone):
        self.sigma = sigma
        d = sigma.ambient_dim
        self.span = ColumnReduction(sigma.equations, d)
        self.k = d - self.span.rank
        lines = [self.span.to_kernel_coordinates(line) for line in sigma.lineality]
        complement = nullspace(lines, self.k)
        self.lineality = ColumnReduction(complement, self.k)
        self.r = self.lineality.rank
        self.pointed: Optional[Cone] = None
        if self.r:
            rays = [self.project(ray) for ray in sigma.rays]
            self.pointed = Cone.from_generators([z for z in rays if z is not None], ambient_dim=self.r)

    def project(self, x: Sequence[int]) -> Optional[IntVector]:
        """Pointed-part coordinates of an integer point of span(sigma), or None off the span."""
        if any(dot(e, x) != 0 for e in self.sigma.equations):
            return None
        y = self.span.to_kernel_coordinates(x)
        return self.lineality.to_quotient_coordinates(y)

    def _to_ambient(self, y: Sequence[int]) -> IntVector:
        return self.span.from_coordinates([0] * self.span.rank, y)

    def lift(self, z: Sequence[int]) -> IntVector:
        y = self.lineality.from_coordinates(z, [0] * (self.k - self.r))
        return self._to_ambient(y)

    def unit_basis(self) -> List[IntVector]:
        return [self._to_ambient(y) for y in self.lineality.kernel_basis()]

    def pointed_contains(self, z: Sequence[int]) -> bool:
        if self.pointed is None:
            return not any(z)
        return self.pointed.contains(z)


@dataclass
class TiltedSemigroup:
    """The semigroup S_delta with its Hilbert basis.

    Attributes:
        cone: The admissible cone delta
        value_group: Gamma = (1/d)Z
        rescale: The integer d
        hilbert_basis: Minimal generators of the pointed part, graded-lex ordered
        units: Z-basis of the unit group (pairs with both signs in S_delta)
    """

    cone: AdmissibleCone
    value_group: ValueGroup
    rescale: int
    hilbert_basis: Tuple[SemigroupElement, ...]
    units: Tuple[SemigroupElement, ...] = ()
    _splitting: Optional[_LatticeSplitting] = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.cone.ambient_dim

    def to_integral(self, element: SemigroupElement) -> Optional[IntVector]:
        """(u, d n) when n lies in Gamma, else None."""
        k = element.n * self.rescale
        if k.denominator != 1:
            return None
        return tuple(element.u) + (int(k),)

    def from_integral(self, x: Sequence[int]) -> SemigroupElement:
        return SemigroupElement(tuple(x[:-1]), Fraction(x[-1], self.rescale))

    def contains(self, element: SemigroupElement) -> bool:
        """Whether <u, v> + n c >= 0 on every generator of delta, with n in Gamma."""
        if len(element.u) != self.n:
            raise DimensionError(f"character of length {len(element.u)} for rank {self.n}")
        if not self.value_group.contains(element.n):
            return False
        rows = [tuple(g) for g in self.cone.cone.rays]
        lines = [tuple(line) for line in self.cone.cone.lineality]
        values = [dot(element.u, g[:-1]) + element.n * g[-1] for g in rows]
        lvalues = [dot(element.u, line[:-1]) for line in lines]
        return all(value >= 0 for value in values) and all(value == 0 for value in lvalues)

    def pointed_coordinates(self, element: SemigroupElement) -> Optional[IntVector]:
        x = self.to_integral(element)
        if x is None or self._splitting is None:
            return None
        return self._splitting.project(x)

    def pointed_basis(self) -> List[IntVector]:
        """Hilbert basis in the coordinates of the pointed part."""
        return [self.pointed_coordinates(h) for h in self.hilbert_basis]  # type: ignore[misc]

    def decomposes(self, element: SemigroupElement, basis: Optional[Sequence[IntVector]] = None) -> bool:
        """Whether an element of S_delta is a sum of basis elements and units."""
        if not self.contains(element):
            return False
        z = self.pointed_coordinates(element)
        if z is None:
            return False
        gens = list(self.pointed_basis() if basis is None else basis)
        return _decomposer(tuple(gens), self._splitting.pointed_contains)(z)  # type: ignore[union-attr]

    def __repr__(self) -> str:
        basis = ", ".join(f"({list(h.u)}, {h.n})" for h in self.hilbert_basis)
        return f"TiltedSemigroup(gamma={self.value_group}, basis=[{basis}], units={len(self.units)})"


def _decomposer(
    gens: Tuple[IntVector, ...], contains: Callable[[IntVector], bool]
) -> Callable[[IntVector], bool]:
    """Memoized test: is a point of the pointed cone a nonnegative integer combination of gens?"""

    @lru_cache(maxsize=None)
    def reachable(z: IntVector) -> bool:
        if not any(z):
            return True
        for g in gens:
            rest = tuple(a - b for a, b in zip(z, g))
            if contains(rest) and reachable(rest):
                return True
        return False

    return reachable


def tilted_semigroup(cone: AdmissibleCone, group: ValueGroup) -> TiltedSemigroup:
    """Hilbert basis of S_delta, computed after rescaling Gamma to Z.

    Raises:
        AdmissibilityError: If the cone is not Gamma-admissible
    """
    cone.require_admissible(group)
    d = group.denominator
    n = cone.ambient_dim
    scaled = Cone.from_generators(
        [tuple(d * x for x in r[:-1]) + (r[-1],) for r in cone.cone.rays],
        [tuple(d * x for x in line[:-1]) + (line[-1],) for line in cone.cone.lineality],
        n + 1,
    )
    sigma = scaled.dual()
    splitting = _LatticeSplitting(sigma)

    pointed = pointed_hilbert_basis(splitting.pointed) if splitting.pointed is not None else []
    lifted = sorted((splitting.lift(z) for z in pointed), key=_sort_key)
    units = sorted(splitting.unit_basis(), key=_sort_key)

    def element(x: IntVector) -> SemigroupElement:
        return SemigroupElement(tuple(x[:-1]), Fraction(x[-1], d))

    semigroup = TiltedSemigroup(
        cone,
        group,
        d,
        tuple(element(x) for x in lifted),
        tuple(element(x) for x in units),
        splitting,
    )
    logger.info(
        f"Tilted semigroup over Gamma={group}: {len(lifted)} basis elements, {len(units)} units"
    )
    return semigroup


def algebra_generators(semigroup: TiltedSemigroup) -> List[SemigroupElement]:
    """Hilbert basis minus the elements with u = 0, which already lie in R."""
    return [h for h in semigroup.hilbert_basis if not h.is_constant()]


def render_generators(
    semigroup: TiltedSemigroup,
    variables: Optional[Sequence[str]] = None,
    uniformizer: str = "t",
) -> List[str]:
    names = tuple(variables) if variables is not None else default_variables(semigroup.n)
    return [h.render(names, uniformizer) for h in algebra_generators(semigroup)]


@dataclass(frozen=True)
class BinomialRelation:
    """Equal sums of two disjoint multisets of generators.

    Attributes:
        left: Generator indices, sorted, with repetition
        right: Generator indices, sorted, with repetition
    """

    left: Tuple[int, ...]
    right: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return max(len(self.left), len(self.right))

    def render(self, names: Sequence[str]) -> str:
        return f"{_product(self.left, names)} = {_product(self.right, names)}"


def _product(indices: Sequence[int], names: Sequence[str]) -> str:
    counts: Dict[int, int] = defaultdict(int)
    for i in indices:
        counts[i] += 1
    return "*".join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in sorted(counts.items()))


def relation_generators(semigroup: TiltedSemigroup) -> List[SemigroupElement]:
    """Hilbert basis plus the uniformizer element (0, 1/d) when it is not a basis element."""
    gens = list(semigroup.hilbert_basis)
    uniformizer = SemigroupElement(tuple([0] * semigroup.n), Fraction(1, semigroup.rescale))
    if uniformizer not in gens:
        gens.append(uniformizer)
    return gens


def generator_names(semigroup: TiltedSemigroup, uniformizer: str = "t") -> List[str]:
    """Fresh symbols x, y, z, w, ... for the generators; the uniformizer keeps its own."""
    pool = [name for name in ("x", "y", "z", "w") if name != uniformizer]
    names = []
    fresh = 0
    for g in relation_generators(semigroup):
        if g.is_constant():
            names.append(g.render((), uniformizer))
            continue
        names.append(pool[fresh] if fresh < len(pool) else f"x{fresh + 1}")
        fresh += 1
    return names


def _replace_multiset(
    multiset: Tuple[int, ...], source: Tuple[int, ...], target: Tuple[int, ...]
) -> Optional[Tuple[int, ...]]:
    """multiset - source + target, or None when source is not contained in multiset."""
    counts: Dict[int, int] = defaultdict(int)
    for i in multiset:
        counts[i] += 1
    for i in source:
        counts[i] -= 1
        if counts[i] < 0:
            return None
    for i in target:
        counts[i] += 1
    return tuple(sorted(i for i, e in counts.items() for _ in range(e)))


def binomial_relations(semigroup: TiltedSemigroup, degree_bound: int = 2) -> List[BinomialRelation]:
    """A minimal generating set of the relations of degree at most ``degree_bound``.

    Candidates are the pairs of disjoint multisets of generators with equal
    sums, taken by increasing degree, relations among Hilbert basis elements
    before those using the appended uniformizer. A candidate is kept only
    when its two sides are not yet connected by moves along the relations
    kept so far, each move replacing one side of a kept relation by the
    other inside a multiset of size at most ``degree_bound``.

    Raises:
        ConfigError: If degree_bound < 2
    """
    if degree_bound < 2:
        raise ConfigError("degree_bound must be at least 2")
    gens = relation_generators(semigroup)
    extra = set(range(len(semigroup.hilbert_basis), len(gens)))
    vectors = [(tuple(g.u), g.n) for g in gens]
    by_sum: Dict[Tuple, List[Tuple[int, ...]]] = defaultdict(list)
    for size in range(1, degree_bound + 1):
        for multiset in combinations_with_replacement(range(len(gens)), size):
            u = tuple(sum(vectors[i][0][j] for i in multiset) for j in range(semigroup.n))
            n = sum((vectors[i][1] for i in multiset), Fraction(0))
            by_sum[(u, n)].append(multiset)

    candidates = []
    for sides in by_sum.values():
        for a_pos, a in enumerate(sides):
            for b in sides[a_pos + 1 :]:
                if set(a) & set(b):
                    continue
                left, right = sorted((a, b), key=lambda s: (-len(s), s))
                candidates.append(BinomialRelation(left, right))
    candidates.sort(
        key=lambda rel: (
            rel.degree,
            bool(extra & set(rel.left + rel.right)),
            len(rel.left) + len(rel.right),
            rel.left,
            rel.right,
        )
    )

    graph = nx.Graph()
    graph.add_nodes_from(m for sides in by_sum.values() for m in sides)
    minimal: List[BinomialRelation] = []
    for rel in candidates:
        if nx.has_path(graph, rel.left, rel.right):
            continue
        minimal.append(rel)
        for source, target in ((rel.left, rel.right), (rel.right, rel.left)):
            for multiset in list(graph.nodes):
                moved = _replace_multiset(multiset, source, target)
                if moved is not None and moved in graph:
                    graph.add_edge(multiset, moved)
    logger.debug(f"{len(minimal)} minimal relations up to degree {degree_bound}")
    return minimal


@dataclass
class BoxOracleReport:
    """Outcome of the exhaustive box check of a Hilbert basis.

    Attributes:
        radius: Half-width of the box in pointed coordinates
        points_checked: Lattice points of the pointed part inside the box
        undecomposed: Box points that are not sums of basis elements
        dispensable: Basis elements that are sums of the other basis elements
    """

    radius: int
    points_checked: int
    undecomposed: List[IntVector] = field(default_factory=list)
    dispensable: List[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.undecomposed and not self.dispensable


def box_radius(semigroup: TiltedSemigroup) -> int:
    """Sum over the extreme rays of the pointed part of their largest coordinate."""
    splitting = semigroup._splitting
    if splitting is None or splitting.pointed is None:
        return 0
    return sum(max(abs(x) for x in ray) for ray in splitting.pointed.rays)


def verify_hilbert_basis(semigroup: TiltedSemigroup, radius: Optional[int] = None) -> BoxOracleReport:
    """Check generation on every box point and indispensability of every basis element."""
    splitting = semigroup._splitting
    bound = box_radius(semigroup) if radius is None else radius
    report = BoxOracleReport(bound, 0)
    if splitting is None or splitting.pointed is None:
        return report
    basis = tuple(semigroup.pointed_basis())
    contains = splitting.pointed_contains
    decomposes = _decomposer(basis, contains)
    for z in product(range(-bound, bound + 1), repeat=splitting.r):
        if not any(z) or not contains(z):
            continue
        report.points_checked += 1
        if not decomposes(z):
            report.undecomposed.append(z)
    for i, h in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        if _decomposer(others, contains)(h):
            report.dispensable.append(i)
    logger.debug(
        f"Box oracle: {report.points_checked} points, {len(report.undecomposed)} undecomposed, "
        f"{len(report.dispensable)} dispensable"
    )
    return report


def face_semigroups(semigroup: TiltedSemigroup) -> List[Tuple[AdmissibleCone, TiltedSemigroup]]:
    """Tilted semigroups of the proper faces of delta."""
    out = []
    for face in semigroup.cone.faces():
        if face == semigroup.cone:
            continue
        out.append((face, tilted_semigroup(face, semigroup.value_group)))
    return out

