"""
Rational polyhedral cones with both representations.

A Cone in Q^d stores its extreme rays (primitive integer vectors, reduced
modulo the lineality space), a canonical integer basis of its lineality
space, its facet normals and a canonical basis of the equations of its
linear span. Conversions run the double description method on integer data
with the combinatorial adjacency test, so no rank computation sits in the
inner loop.

Everything above this module (polyhedra, admissible cones, fans,
tropicalization) is expressed through cones, usually of one dimension more
than the space of interest.
"""

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from adictrop.core.exactnum import dot, integral_direction, primitive
from adictrop.core.linalg import row_space_basis
from adictrop.errors import DimensionError

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


def _as_int_vector(row: Sequence, d: int) -> IntVector:
    if len(row) != d:
        raise DimensionError(f"expected a vector of length {d}, got {len(row)}")
    if all(isinstance(x, int) and not isinstance(x, bool) for x in row):
        return primitive(row)
    return integral_direction([Fraction(x) for x in row])


def _combine(s: int, x: IntVector, t: int, y: IntVector) -> IntVector:
    return primitive([s * a + t * b for a, b in zip(x, y)])


def _double_description(
    constraints: Sequence[IntVector], d: int
) -> Tuple[List[IntVector], List[IntVector]]:
    """Extreme rays and lineality generators of {x : a.x >= 0 for a in constraints}."""
    lineality: List[IntVector] = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    rays: List[IntVector] = []
    zeros: List[FrozenSet[int]] = []

    for k, a in enumerate(constraints):
        if not any(a):
            continue
        pivot = next((i for i, line in enumerate(lineality) if dot(a, line) != 0), None)
        if pivot is not None:
            line = lineality.pop(pivot)
            s = dot(a, line)
            if s < 0:
                line = tuple(-x for x in line)
                s = -s
            lineality = [_combine(s, other, -dot(a, other), line) for other in lineality]
            rays = [_combine(s, r, -dot(a, r), line) for r in rays]
            zeros = [z | {k} for z in zeros]
            rays.append(primitive(line))
            zeros.append(frozenset(range(k)))
            continue

        values = [dot(a, r) for r in rays]
        next_rays: List[IntVector] = []
        next_zeros: List[FrozenSet[int]] = []
        for i, value in enumerate(values):
            if value > 0:
                next_rays.append(rays[i])
                next_zeros.append(zeros[i])
            elif value == 0:
                next_rays.append(rays[i])
                next_zeros.append(zeros[i] | {k})
        positive = [i for i, value in enumerate(values) if value > 0]
        negative = [i for i, value in enumerate(values) if value < 0]
        for i in positive:
            for j in negative:
                common = zeros[i] & zeros[j]
                if any(
                    common <= zeros[m] for m in range(len(rays)) if m != i and m != j
                ):
                    continue
                next_rays.append(_combine(values[i], rays[j], -values[j], rays[i]))
                next_zeros.append(common | {k})
        rays, zeros = next_rays, next_zeros

    return rays, lineality


def _canonical(
    rays: Iterable[IntVector], lineality: Sequence[IntVector], d: int
) -> Tuple[Tuple[IntVector, ...], Tuple[IntVector, ...]]:
    """Reduce rays modulo the canonical lineality basis and sort everything."""
    basis, pivots = row_space_basis(list(lineality), d)
    reduced = set()
    for ray in rays:
        r = list(ray)
        for row, p in zip(basis, pivots):
            if r[p] != 0:
                r = [row[p] * x - r[p] * y for x, y in zip(r, row)]
        vec = primitive(r)
        if any(vec):
            reduced.add(vec)
    return tuple(sorted(reduced)), tuple(tuple(row) for row in basis)


def _convert(
    inequalities: Sequence[IntVector], equations: Sequence[IntVector], d: int
) -> Tuple[Tuple[IntVector, ...], Tuple[IntVector, ...]]:
    constraints = list(inequalities)
    for e in equations:
        constraints.append(e)
        constraints.append(tuple(-x for x in e))
    rays, lineality = _double_description(constraints, d)
    return _canonical(rays, lineality, d)


class Cone:
    """A rational polyhedral cone in Q^d.

    Instances are immutable and compare equal exactly when they are the same
    set. Use ``from_inequalities`` or ``from_generators`` to build one.

    Attributes:
        ambient_dim: d
        rays: Extreme rays modulo lineality, primitive and sorted
        lineality: Canonical integer basis of the lineality space
        facets: Facet normals a with a.x >= 0 on the cone
        equations: Canonical integer basis of the orthogonal complement of the span
    """

    __slots__ = ("ambient_dim", "rays", "lineality", "facets", "equations", "_faces")

    def __init__(
        self,
        ambient_dim: int,
        rays: Tuple[IntVector, ...],
        lineality: Tuple[IntVector, ...],
        facets: Tuple[IntVector, ...],
        equations: Tuple[IntVector, ...],
    ):
        self.ambient_dim = ambient_dim
        self.rays = rays
        self.lineality = lineality
        self.facets = facets
        self.equations = equations
        self._faces: Optional[List["Cone"]] = None

    @classmethod
    def from_inequalities(
        cls,
        inequalities: Iterable[Sequence],
        equations: Iterable[Sequence] = (),
        ambient_dim: Optional[int] = None,
    ) -> "Cone":
        """Cone {x : a.x >= 0 for each inequality, e.x = 0 for each equation}."""
        ineqs = [tuple(a) for a in inequalities]
        eqs = [tuple(e) for e in equations]
        d = _infer_dim(ineqs + eqs, ambient_dim)
        ineqs_i = [_as_int_vector(a, d) for a in ineqs]
        eqs_i = [_as_int_vector(e, d) for e in eqs]
        rays, lineality = _convert(ineqs_i, eqs_i, d)
        facets, equations_out = _convert(rays, lineality, d)
        return cls(d, rays, lineality, facets, equations_out)

    @classmethod
    def from_generators(
        cls,
        rays: Iterable[Sequence],
        lineality: Iterable[Sequence] = (),
        ambient_dim: Optional[int] = None,
    ) -> "Cone":
        """Cone generated by rays plus a linear space."""
        gens = [tuple(r) for r in rays]
        lines = [tuple(line) for line in lineality]
        d = _infer_dim(gens + lines, ambient_dim)
        gens_i = [_as_int_vector(r, d) for r in gens]
        lines_i = [_as_int_vector(line, d) for line in lines]
        facets, equations = _convert(gens_i, lines_i, d)
        rays_out, lineality_out = _convert(facets, equations, d)
        return cls(d, rays_out, lineality_out, facets, equations)

    @classmethod
    def whole_space(cls, d: int) -> "Cone":
        return cls.from_inequalities([], [], ambient_dim=d)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, point: Sequence) -> bool:
        """Exact membership of a rational point."""
        if len(point) != self.ambient_dim:
            raise DimensionError(
                f"point of length {len(point)} in a cone of ambient dimension {self.ambient_dim}"
            )
        return all(dot(a, point) >= 0 for a in self.facets) and all(
            dot(e, point) == 0 for e in self.equations
        )

    def contains_in_relative_interior(self, point: Sequence) -> bool:
        return all(dot(a, point) > 0 for a in self.facets) and all(
            dot(e, point) == 0 for e in self.equations
        )

    def contains_cone(self, other: "Cone") -> bool:
        self._check_ambient(other)
        if not all(self.contains(r) for r in other.rays):
            return False
        return all(
            all(dot(a, line) == 0 for a in self.facets) and all(dot(e, line) == 0 for e in self.equations)
            for line in other.lineality
        )

    def intersection(self, other: "Cone") -> "Cone":
        self._check_ambient(other)
        return Cone.from_inequalities(
            self.facets + other.facets, self.equations + other.equations, self.ambient_dim
        )

    def dual(self) -> "Cone":
        """The dual cone {y : y.x >= 0 for all x in the cone}."""
        return Cone(self.ambient_dim, self.facets, self.equations, self.rays, self.lineality)

    def tight_facets(self, points: Iterable[Sequence]) -> FrozenSet[int]:
        """Indices of facets vanishing on every given point."""
        pts = list(points)
        return frozenset(
            j for j, a in enumerate(self.facets) if all(dot(a, p) == 0 for p in pts)
        )

    def face_from_tight_facets(self, tight: Iterable[int]) -> "Cone":
        tight = list(tight)
        if not tight:
            return self
        rays = [r for r in self.rays if all(dot(self.facets[j], r) == 0 for j in tight)]
        return Cone.from_generators(rays, self.lineality, self.ambient_dim)

    def minimal_face_containing(self, other: "Cone") -> "Cone":
        """Smallest face of this cone containing another cone it contains."""
        return self.face_from_tight_facets(self.tight_facets(other.rays + other.lineality))

    def is_face_of(self, other: "Cone") -> bool:
        if not other.contains_cone(self):
            return False
        return other.minimal_face_containing(self) == self

    def faces(self) -> List["Cone"]:
        """All faces including the cone itself, sorted by dimension then generators."""
        if self._faces is not None:
            return self._faces
        zero_sets = [
            frozenset(i for i, r in enumerate(self.rays) if dot(a, r) == 0) for a in self.facets
        ]
        all_rays = frozenset(range(len(self.rays)))
        found: Dict[FrozenSet[int], FrozenSet[int]] = {frozenset(): all_rays}
        frontier = [frozenset()]
        while frontier:
            next_frontier = []
            for tight in frontier:
                ray_set = found[tight]
                for j in range(len(self.facets)):
                    if j in tight:
                        continue
                    sub = ray_set & zero_sets[j]
                    closure = frozenset(k for k, z in enumerate(zero_sets) if sub <= z)
                    if closure not in found:
                        found[closure] = sub
                        next_frontier.append(closure)
            frontier = next_frontier

        faces = []
        for tight, ray_set in found.items():
            if not tight:
                faces.append(self)
                continue
            rays = [self.rays[i] for i in sorted(ray_set)]
            faces.append(Cone.from_generators(rays, self.lineality, self.ambient_dim))
        faces.sort(key=lambda c: c.sort_key())
        self._faces = faces
        logger.debug(f"Enumerated {len(faces)} faces of a {self.dim}-dimensional cone")
        return faces

    def faces_of_dim(self, k: int) -> List["Cone"]:
        return [f for f in self.faces() if f.dim == k]

    def relative_interior_point(self) -> IntVector:
        """An integer point in the relative interior (sum of the extreme rays)."""
        point = [0] * self.ambient_dim
        for r in self.rays:
            point = [x + y for x, y in zip(point, r)]
        return tuple(point)

    def sort_key(self) -> Tuple:
        return (self.dim, self.rays, self.lineality)

    def _check_ambient(self, other: "Cone") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError(
                f"cones live in dimensions {self.ambient_dim} and {other.ambient_dim}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.rays == other.rays
            and self.lineality == other.lineality
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.rays, self.lineality))

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, rays={list(self.rays)}, lineality={list(self.lineality)})"


def _infer_dim(rows: List[Tuple], ambient_dim: Optional[int]) -> int:
    if ambient_dim is not None:
        return ambient_dim
    if not rows:
        raise DimensionError("cannot infer the ambient dimension of an empty description")
    return len(rows[0])
