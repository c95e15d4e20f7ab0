"""
Polyhedra in N_Q and Gamma-admissible cones in N_Q x Q_{>=0}.

Both are stored through the same object: the closed cone in Q^{n+1} over
P x {1}, whose last coordinate c is the height. A Polyhedron is the slice of
that cone at c = 1 and its recession cone is the slice at c = 0, so
``cone_over`` is the identity on the stored data and intersections, faces
and containment all reduce to cone operations.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from adictrop.core.exactnum import (
    LatticeVector,
    QVector,
    RatLike,
    ValueGroup,
    format_rat,
    is_gamma_rational,
    pairing,
    primitive,
    to_rat,
)
from adictrop.core.linalg import ColumnReduction
from adictrop.errors import AdmissibilityError, DimensionError, EmptyPolyhedronError
from adictrop.polyhedra.cone import Cone

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Halfspace:
    """The halfspace <u, v> + gamma * c >= 0 (or <u, v> + gamma >= 0 at height 1).

    Attributes:
        normal: u in M, primitive unless zero
        offset: gamma
    """

    normal: LatticeVector
    offset: Fraction

    def __post_init__(self):
        if not isinstance(self.normal, LatticeVector):
            object.__setattr__(self, "normal", LatticeVector(tuple(self.normal)))
        object.__setattr__(self, "offset", to_rat(self.offset))

    @classmethod
    def from_row(cls, row: Sequence[int]) -> "Halfspace":
        """Scale a homogenized integer row (u, b) so that u is primitive."""
        head, b = list(row[:-1]), row[-1]
        g = 0
        for x in head:
            g = math.gcd(g, x)
        if g == 0:
            return cls(LatticeVector(tuple(head)), Fraction(1 if b > 0 else -1 if b < 0 else 0))
        return cls(LatticeVector(tuple(x // g for x in head)), Fraction(b, g))

    def homogenized(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in self.normal) + (self.offset,)

    def evaluate(self, v: Sequence[RatLike], c: RatLike = 1) -> Fraction:
        return pairing(self.normal, v) + self.offset * to_rat(c)

    def contains(self, v: Sequence[RatLike], c: RatLike = 1) -> bool:
        return self.evaluate(v, c) >= 0

    def to_strings(self) -> Tuple[Tuple[int, ...], str]:
        return tuple(self.normal), format_rat(self.offset)

    def __str__(self) -> str:
        return f"<{self.normal}, v> + {format_rat(self.offset)} >= 0"


HalfspaceLike = Union[Halfspace, Tuple[Sequence[int], RatLike]]


def _homogenized_row(h: HalfspaceLike) -> Tuple[Fraction, ...]:
    if isinstance(h, Halfspace):
        return h.homogenized()
    normal, offset = h
    return tuple(Fraction(x) for x in normal) + (to_rat(offset),)


def _height_axis(n: int) -> Tuple[int, ...]:
    return tuple([0] * n + [1])


def _lift_point(v: Sequence[RatLike]) -> Tuple[int, ...]:
    coords = [to_rat(x) for x in v]
    denom = 1
    for x in coords:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    return primitive([int(x * denom) for x in coords] + [denom])


class _HomogenizedShape:
    """Shared behaviour of objects stored as a cone in Q^{n+1} inside c >= 0."""

    __slots__ = ("cone",)

    def __init__(self, cone: Cone):
        if any(r[-1] < 0 for r in cone.rays) or any(line[-1] != 0 for line in cone.lineality):
            raise DimensionError("cone leaves the upper halfspace c >= 0")
        self.cone = cone

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim - 1

    def _height_one_rays(self) -> List[Tuple[int, ...]]:
        return [r for r in self.cone.rays if r[-1] > 0]

    def _height_zero_rays(self) -> List[Tuple[int, ...]]:
        return [r for r in self.cone.rays if r[-1] == 0]

    def _vertices(self) -> Tuple[QVector, ...]:
        return tuple(
            sorted(QVector(tuple(Fraction(x, r[-1]) for x in r[:-1])) for r in self._height_one_rays())
        )

    def _vertices_gamma_rational(self, group: ValueGroup) -> bool:
        """Whether every minimal face at height 1 meets N_Gamma.

        With lineality L the minimal face v + L meets N_Gamma iff <u, v> lies in
        Gamma for a Z-basis u of the saturated lattice L^perp in M.
        """
        lines = [line[:-1] for line in self.cone.lineality]
        if not lines:
            return all(is_gamma_rational(v, group) for v in self._vertices())
        normals = ColumnReduction(lines, self.ambient_dim).kernel_basis()
        return all(group.contains(pairing(u, v)) for v in self._vertices() for u in normals)

    def _recession_cone(self) -> Cone:
        return Cone.from_generators(
            [r[:-1] for r in self._height_zero_rays()],
            [line[:-1] for line in self.cone.lineality],
            self.ambient_dim,
        )

    def _halfspaces(self) -> Tuple[Halfspace, ...]:
        return tuple(Halfspace.from_row(a) for a in self.cone.facets)

    def _equalities(self) -> Tuple[Halfspace, ...]:
        return tuple(Halfspace.from_row(e) for e in self.cone.equations)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.cone == other.cone  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.cone))


class Polyhedron(_HomogenizedShape):
    """A nonempty rational polyhedron in N_Q.

    The V-representation is read off the homogenization: rays at positive
    height rescaled to height 1 are the vertices (minimal-face
    representatives when there is lineality), rays at height 0 are the
    recession rays.
    """

    __slots__ = ()

    def __init__(self, cone: Cone):
        super().__init__(cone)
        if not any(r[-1] > 0 for r in cone.rays):
            raise EmptyPolyhedronError("cone has no point at height 1")

    @classmethod
    def from_halfspaces(
        cls,
        halfspaces: Iterable[HalfspaceLike],
        equalities: Iterable[HalfspaceLike] = (),
        ambient_dim: Optional[int] = None,
    ) -> "Polyhedron":
        """Polyhedron {v : <u, v> + gamma >= 0} with optional equalities.

        Raises:
            EmptyPolyhedronError: If the system has no solution
        """
        rows = [_homogenized_row(h) for h in halfspaces]
        eq_rows = [_homogenized_row(h) for h in equalities]
        n = _infer_ambient(rows + eq_rows, ambient_dim, extended=True)
        cone = Cone.from_inequalities(rows + [_height_axis(n)], eq_rows, n + 1)
        return cls(cone)

    @classmethod
    def from_points(
        cls,
        vertices: Iterable[Sequence[RatLike]],
        rays: Iterable[Sequence[int]] = (),
        lineality: Iterable[Sequence[int]] = (),
        ambient_dim: Optional[int] = None,
    ) -> "Polyhedron":
        """conv(vertices) + cone(rays) + span(lineality)."""
        verts = [tuple(v) for v in vertices]
        if not verts:
            raise EmptyPolyhedronError("a polyhedron needs at least one point")
        n = ambient_dim if ambient_dim is not None else len(verts[0])
        gens = [_lift_point(v) for v in verts] + [tuple(r) + (0,) for r in rays]
        lines = [tuple(line) + (0,) for line in lineality]
        for g in gens + lines:
            if len(g) != n + 1:
                raise DimensionError(f"generator {g[:-1]} does not live in dimension {n}")
        return cls(Cone.from_generators(gens, lines, n + 1))

    @classmethod
    def point(cls, v: Sequence[RatLike]) -> "Polyhedron":
        return cls.from_points([v])

    @property
    def dim(self) -> int:
        return self.cone.dim - 1

    @property
    def vertices(self) -> Tuple[QVector, ...]:
        return self._vertices()

    @property
    def rays(self) -> Tuple[LatticeVector, ...]:
        return tuple(LatticeVector(r[:-1]) for r in self._height_zero_rays())

    @property
    def lineality(self) -> Tuple[LatticeVector, ...]:
        return tuple(LatticeVector(line[:-1]) for line in self.cone.lineality)

    @property
    def halfspaces(self) -> Tuple[Halfspace, ...]:
        """Facet halfspaces, without the implicit height constraint."""
        return tuple(h for h in self._halfspaces() if not h.normal.is_zero())

    @property
    def equalities(self) -> Tuple[Halfspace, ...]:
        return self._equalities()

    def is_bounded(self) -> bool:
        return not self._height_zero_rays() and not self.cone.lineality

    def is_gamma_rational(self, group: ValueGroup) -> bool:
        return self._vertices_gamma_rational(group)

    def contains(self, v: Sequence[RatLike]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"point of length {len(v)} tested against dimension {self.ambient_dim}")
        return self.cone.contains(tuple(to_rat(x) for x in v) + (Fraction(1),))

    def contains_in_relative_interior(self, v: Sequence[RatLike]) -> bool:
        return self.cone.contains_in_relative_interior(tuple(to_rat(x) for x in v) + (Fraction(1),))

    def recession_cone(self) -> Cone:
        return self._recession_cone()

    def barycenter(self) -> QVector:
        """Average of the vertices plus the sum of the rays: a relative-interior point."""
        verts = self.vertices
        total = [Fraction(0)] * self.ambient_dim
        for v in verts:
            total = [a + b for a, b in zip(total, v)]
        point = [x / len(verts) for x in total]
        for r in self.rays:
            point = [a + b for a, b in zip(point, r)]
        return QVector(tuple(point))

    def intersection(self, other: "Polyhedron") -> Optional["Polyhedron"]:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("polyhedra live in different dimensions")
        return slice_at_height_one(self.cone.intersection(other.cone))

    def faces(self) -> List["Polyhedron"]:
        """Nonempty faces, including the polyhedron itself."""
        return [Polyhedron(f) for f in self.cone.faces() if any(r[-1] > 0 for r in f.rays)]

    def is_face_of(self, other: "Polyhedron") -> bool:
        return self.cone.is_face_of(other.cone)

    def sort_key(self) -> Tuple:
        return (self.dim, self.vertices, self.rays, self.lineality)

    def __lt__(self, other: "Polyhedron") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        verts = ", ".join(str(v) for v in self.vertices)
        rays = ", ".join(str(r) for r in self.rays)
        return f"Polyhedron(dim={self.dim}, vertices=[{verts}], rays=[{rays}])"


class AdmissibleCone(_HomogenizedShape):
    """A cone in N_Q x Q_{>=0} cut out by halfspaces <u, v> + gamma * c >= 0."""

    __slots__ = ()

    @classmethod
    def from_halfspaces(
        cls,
        halfspaces: Iterable[HalfspaceLike],
        equalities: Iterable[HalfspaceLike] = (),
        ambient_dim: Optional[int] = None,
    ) -> "AdmissibleCone":
        """Cone of (v, c) satisfying the halfspaces; c >= 0 is always added."""
        rows = [_homogenized_row(h) for h in halfspaces]
        eq_rows = [_homogenized_row(h) for h in equalities]
        n = _infer_ambient(rows + eq_rows, ambient_dim, extended=True)
        return cls(Cone.from_inequalities(rows + [_height_axis(n)], eq_rows, n + 1))

    @classmethod
    def from_generators(
        cls,
        rays: Iterable[Sequence[int]],
        lineality: Iterable[Sequence[int]] = (),
        ambient_dim: Optional[int] = None,
    ) -> "AdmissibleCone":
        """Cone generated by extended vectors (v, c) with c >= 0."""
        gens = [tuple(r) for r in rays]
        lines = [tuple(line) for line in lineality]
        d = ambient_dim + 1 if ambient_dim is not None else None
        return cls(Cone.from_generators(gens, lines, d))

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def generators(self) -> Tuple[LatticeVector, ...]:
        return tuple(LatticeVector(r) for r in self.cone.rays)

    @property
    def height_one_vertices(self) -> Tuple[QVector, ...]:
        return self._vertices()

    @property
    def lineality(self) -> Tuple[LatticeVector, ...]:
        return tuple(LatticeVector(line) for line in self.cone.lineality)

    @property
    def halfspaces(self) -> Tuple[Halfspace, ...]:
        return self._halfspaces()

    @property
    def equalities(self) -> Tuple[Halfspace, ...]:
        return self._equalities()

    def is_admissible(self, group: ValueGroup) -> bool:
        """Offsets of the N-primitive facets lie in Gamma and height-1 vertices are Gamma-rational."""
        for h in self._halfspaces() + self._equalities():
            if not h.normal.is_zero() and not group.contains(h.offset):
                return False
        return self._vertices_gamma_rational(group)

    def require_admissible(self, group: ValueGroup) -> None:
        if not self.is_admissible(group):
            raise AdmissibilityError(f"cone {self!r} is not {group}-admissible")

    def contains(self, v: Sequence[RatLike], c: RatLike = 1) -> bool:
        return self.cone.contains(tuple(to_rat(x) for x in v) + (to_rat(c),))

    def recession_slice(self) -> Cone:
        """The slice at c = 0, as a cone in N_Q."""
        return self._recession_cone()

    def height_one_slice(self) -> Optional[Polyhedron]:
        return slice_at_height_one(self.cone)

    def faces(self) -> List["AdmissibleCone"]:
        return [AdmissibleCone(f) for f in self.cone.faces()]

    def intersection(self, other: "AdmissibleCone") -> "AdmissibleCone":
        return AdmissibleCone(self.cone.intersection(other.cone))

    def contains_cone(self, other: "AdmissibleCone") -> bool:
        return self.cone.contains_cone(other.cone)

    def is_face_of(self, other: "AdmissibleCone") -> bool:
        return self.cone.is_face_of(other.cone)

    def sort_key(self) -> Tuple:
        return self.cone.sort_key()

    def __lt__(self, other: "AdmissibleCone") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"AdmissibleCone(dim={self.dim}, generators=[{gens}])"


def slice_at_height_one(cone: Cone) -> Optional[Polyhedron]:
    """The polyhedron cone cap {c = 1}, or None when it is empty."""
    if not any(r[-1] > 0 for r in cone.rays):
        return None
    return Polyhedron(cone)


def cone_over(polyhedron: Polyhedron, group: Optional[ValueGroup] = None) -> AdmissibleCone:
    """Closed cone spanned by P x {1}.

    Raises:
        AdmissibilityError: If a vertex of P is not Gamma-rational
    """
    if group is not None and not polyhedron.is_gamma_rational(group):
        raise AdmissibilityError(
            f"vertices {[str(v) for v in polyhedron.vertices]} are not {group}-rational"
        )
    return AdmissibleCone(polyhedron.cone)


def ray_over_point(v: Sequence[RatLike], group: Optional[ValueGroup] = None) -> AdmissibleCone:
    """The ray spanned by (v, 1); Gamma-admissible iff v is Gamma-rational."""
    return cone_over(Polyhedron.point(v), group)


def _infer_ambient(rows: List[Tuple], ambient_dim: Optional[int], extended: bool) -> int:
    if ambient_dim is not None:
        return ambient_dim
    if not rows:
        raise DimensionError("cannot infer the ambient dimension of an empty description")
    return len(rows[0]) - (1 if extended else 0)
