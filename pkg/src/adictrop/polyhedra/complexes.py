"""
Polyhedral complexes, fans and Gamma-admissible (Gubler) fans.

All three are face-closed families: the constructor closes the given cells
under taking faces, sorts them deterministically, records the face relation
as a networkx DiGraph (an edge i -> j when cell i is a facet of cell j) and,
unless told otherwise, checks that any two maximal cells meet in a common
face.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Generic, Iterable, List, Optional, Sequence, Tuple, TypeVar

import networkx as nx

from adictrop.core.exactnum import QVector, RatLike, ValueGroup, integral_direction, to_rat
from adictrop.core.linalg import determinant
from adictrop.errors import (
    AdmissibilityError,
    ComplexInvalidError,
    DimensionError,
    NotCompleteError,
    RefinementError,
)
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import AdmissibleCone, Polyhedron, cone_over, ray_over_point

logger = logging.getLogger(__name__)

T = TypeVar("T", Cone, Polyhedron, AdmissibleCone)


class _FaceClosedFamily(Generic[T]):
    """Deterministically ordered, face-closed family of cells."""

    def __init__(self, cells: Iterable[T], ambient_dim: int, validate: bool = True):
        closure = set()
        for cell in cells:
            closure.update(cell.faces())
        self.ambient_dim = ambient_dim
        self.cells: List[T] = sorted(closure, key=lambda c: c.sort_key())
        self._index: Dict[T, int] = {c: i for i, c in enumerate(self.cells)}

        self.poset = nx.DiGraph()
        for i, cell in enumerate(self.cells):
            self.poset.add_node(i, dim=cell.dim)
        for j, cell in enumerate(self.cells):
            for face in cell.faces():
                if face.dim == cell.dim - 1:
                    self.poset.add_edge(self._index[face], j)

        if validate:
            self._validate_intersections()

    def _intersect(self, a: T, b: T) -> Optional[T]:
        return a.intersection(b)  # type: ignore[return-value]

    def _validate_intersections(self) -> None:
        maximal = self.maximal_indices()
        for pos, i in enumerate(maximal):
            for j in maximal[pos + 1 :]:
                a, b = self.cells[i], self.cells[j]
                meet = self._intersect(a, b)
                if meet is None:
                    continue
                if not (meet.is_face_of(a) and meet.is_face_of(b)):
                    raise ComplexInvalidError(
                        f"cells {i} and {j} intersect in {meet!r}, which is not a common face"
                    )

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def index_of(self, cell: T) -> int:
        try:
            return self._index[cell]
        except KeyError:
            raise KeyError(f"{cell!r} is not a cell of this family") from None

    def __contains__(self, cell: object) -> bool:
        return cell in self._index

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def maximal_indices(self) -> List[int]:
        return [i for i in range(len(self.cells)) if self.poset.out_degree(i) == 0]

    @property
    def maximal_cells(self) -> List[T]:
        return [self.cells[i] for i in self.maximal_indices()]

    def cells_of_dim(self, k: int) -> List[T]:
        return [c for c in self.cells if c.dim == k]

    def indices_of_dim(self, k: int) -> List[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    def faces_of(self, index: int) -> List[int]:
        """Indices of all faces of a cell, itself included."""
        return sorted(nx.ancestors(self.poset, index) | {index})

    def cofaces_of(self, index: int) -> List[int]:
        """Indices of all cells having the given cell as a face, itself included."""
        return sorted(nx.descendants(self.poset, index) | {index})

    def is_complete(self, assumed: Optional[bool] = None) -> bool:
        """Completeness certificate for the ambient space.

        Pure full dimension plus every codimension-one cell lying in exactly
        two maximal cells. For ambient dimension 3 and above the certificate
        is replaced by the caller's assertion when one is given.
        """
        if self.ambient_dim >= 3 and assumed is not None:
            logger.warning(f"Completeness in dimension {self.ambient_dim} asserted by caller: {assumed}")
            return assumed
        n = self.ambient_dim
        if not self.cells or any(self.cells[i].dim != n for i in self.maximal_indices()):
            return False
        for i in self.indices_of_dim(n - 1):
            if self.poset.out_degree(i) != 2:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.cells == other.cells  # type: ignore

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.ambient_dim, tuple(self.cells)))


class PolyhedralComplex(_FaceClosedFamily[Polyhedron]):
    """A polyhedral complex in N_Q.

    Attributes:
        ambient_dim: Rank n of N
        cells: All cells, closed under faces, sorted by (dim, vertices, rays)
        poset: Face relation (facet -> cell edges) over cell indices
    """

    def __init__(
        self,
        cells: Iterable[Polyhedron],
        ambient_dim: Optional[int] = None,
        validate: bool = True,
    ):
        cells = list(cells)
        if ambient_dim is None:
            if not cells:
                raise DimensionError("an empty complex needs an explicit ambient dimension")
            ambient_dim = cells[0].ambient_dim
        for c in cells:
            if c.ambient_dim != ambient_dim:
                raise DimensionError(f"cell of dimension {c.ambient_dim} in a complex in Q^{ambient_dim}")
        super().__init__(cells, ambient_dim, validate)

    @property
    def vertices(self) -> List[QVector]:
        return [c.vertices[0] for c in self.cells_of_dim(0)]

    def vertex_index(self, v: Sequence[RatLike]) -> int:
        """Cell index of the 0-cell at v.

        Raises:
            ComplexInvalidError: If v is not a vertex of the complex
        """
        point = Polyhedron.point(v)
        if point not in self:
            raise ComplexInvalidError(f"{QVector(tuple(v))} is not a vertex of the complex")
        return self.index_of(point)

    def is_gamma_rational(self, group: ValueGroup) -> bool:
        return all(c.is_gamma_rational(group) for c in self.cells)

    def support_contains(self, v: Sequence[RatLike]) -> bool:
        return any(c.contains(v) for c in self.maximal_cells)

    def cell_containing_in_relative_interior(self, v: Sequence[RatLike]) -> Optional[int]:
        for i, c in enumerate(self.cells):
            if c.contains_in_relative_interior(v):
                return i
        return None

    def recession_fan(self) -> "Fan":
        """Fan of cell recession cones, computed directly from the cells."""
        return Fan([c.recession_cone() for c in self.cells], self.ambient_dim, validate=False)

    def __repr__(self) -> str:
        return f"PolyhedralComplex(ambient_dim={self.ambient_dim}, cells={len(self.cells)})"


class Fan(_FaceClosedFamily[Cone]):
    """A rational polyhedral fan in N_Q."""

    def __init__(self, cones: Iterable[Cone], ambient_dim: Optional[int] = None, validate: bool = True):
        cones = list(cones)
        if ambient_dim is None:
            if not cones:
                raise DimensionError("an empty fan needs an explicit ambient dimension")
            ambient_dim = cones[0].ambient_dim
        super().__init__(cones, ambient_dim, validate)

    @property
    def rays(self) -> List[Tuple[int, ...]]:
        """Primitive generators of the one-dimensional cones of a pointed fan."""
        return sorted(c.rays[0] for c in self.cells_of_dim(1) if c.rays)

    def is_smooth(self) -> bool:
        """Every cone is generated by part of a Z-basis of N."""
        for cone in self.cells:
            if cone.lineality:
                return False
            k = len(cone.rays)
            if k != cone.dim:
                return False
            if k == 0:
                continue
            if k == self.ambient_dim:
                if abs(determinant(cone.rays)) != 1:
                    return False
            elif not _extends_to_basis(cone.rays, self.ambient_dim):
                return False
        return True

    def contains_point(self, v: Sequence[RatLike]) -> bool:
        point = tuple(to_rat(x) for x in v)
        return any(c.contains(point) for c in self.maximal_cells)

    def __repr__(self) -> str:
        return f"Fan(ambient_dim={self.ambient_dim}, rays={self.rays}, cones={len(self.cells)})"


def _extends_to_basis(rays: Sequence[Tuple[int, ...]], n: int) -> bool:
    from itertools import combinations
    from math import gcd

    k = len(rays)
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, determinant([[r[c] for c in cols] for r in rays]))
    return g == 1


class GublerFan(_FaceClosedFamily[AdmissibleCone]):
    """A Gamma-admissible fan in N_Q x Q_{>=0}.

    Attributes:
        value_group: Gamma
        support_full: Whether the support is all of N_R x R_{>=0}
        recession: The recession fan at c = 0
    """

    def __init__(
        self,
        cones: Iterable[AdmissibleCone],
        value_group: ValueGroup,
        ambient_dim: Optional[int] = None,
        validate: bool = True,
        assume_complete: Optional[bool] = None,
    ):
        cones = list(cones)
        if ambient_dim is None:
            if not cones:
                raise DimensionError("an empty fan needs an explicit ambient dimension")
            ambient_dim = cones[0].ambient_dim
        for cone in cones:
            cone.require_admissible(value_group)
        super().__init__(cones, ambient_dim, validate)
        self.value_group = value_group
        self.recession = Fan(
            [c.recession_slice() for c in self.cells], ambient_dim, validate=False
        )
        self.height_one = PolyhedralComplex(
            [s for s in (c.height_one_slice() for c in self.cells) if s is not None],
            ambient_dim,
            validate=False,
        )
        self.support_full = self.height_one.is_complete(assume_complete) and self.recession.is_complete(
            assume_complete
        )
        logger.debug(
            f"Gubler fan with {len(self.cells)} cones over Gamma={value_group}, "
            f"full support: {self.support_full}"
        )

    def __repr__(self) -> str:
        return (
            f"GublerFan(ambient_dim={self.ambient_dim}, cones={len(self.cells)}, "
            f"gamma={self.value_group}, full={self.support_full})"
        )


@dataclass
class RefinementResult:
    """Outcome of a refinement test.

    Attributes:
        refines: True iff every cone of the finer fan lies in a cone of the coarser one
        cell_map: Finer cone index -> index of the minimal containing coarser cone
    """

    refines: bool
    cell_map: Dict[int, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.refines


def fan_over_cells(
    complex_: PolyhedralComplex,
    group: ValueGroup,
    assume_complete: Optional[bool] = None,
) -> GublerFan:
    """Cone over every cell of a complex, complete or not.

    Raises:
        AdmissibilityError: If a vertex is not Gamma-rational
    """
    if not complex_.is_gamma_rational(group):
        raise AdmissibilityError(f"complex is not {group}-rational")
    cones = [cone_over(c, group) for c in complex_.maximal_cells]
    return GublerFan(cones, group, complex_.ambient_dim, assume_complete=assume_complete)


def fan_over_complex(
    complex_: PolyhedralComplex,
    group: Optional[ValueGroup] = None,
    assume_complete: bool = False,
) -> GublerFan:
    """The fan Delta_C of cones over the cells of a complete complex.

    The recession fan is available as ``.recession`` on the result.

    Raises:
        NotCompleteError: If the complex does not cover N_R
        AdmissibilityError: If the complex is not Gamma-rational
    """
    group = group or ValueGroup(1)
    if complex_.ambient_dim >= 3:
        if not assume_complete:
            raise NotCompleteError(
                f"completeness in dimension {complex_.ambient_dim} must be asserted by the caller"
            )
    elif not complex_.is_complete():
        raise NotCompleteError("complex does not cover N_R")
    fan = fan_over_cells(complex_, group, assume_complete=True if assume_complete else None)
    logger.info(f"Coned a complex with {len(complex_.cells)} cells into {len(fan.cells)} cones")
    return fan


def recession_fan(fan: GublerFan) -> Fan:
    """The slice of a Gubler fan at height 0, as a fan in N."""
    return fan.recession


def height_one_complex(fan: GublerFan) -> PolyhedralComplex:
    """The slice of a Gubler fan at height 1, as a complex in N."""
    return fan.height_one


def star_fan(complex_: PolyhedralComplex, v: Sequence[RatLike]) -> Fan:
    """Fan of the cones R_{>=0}(P - v) over the cells P containing a vertex v.

    Raises:
        ComplexInvalidError: If v is not a vertex
    """
    index = complex_.vertex_index(v)
    vertex = [to_rat(x) for x in v]
    cones = []
    for j in complex_.cofaces_of(index):
        cell = complex_.cells[j]
        gens = [
            integral_direction([a - b for a, b in zip(w, vertex)])
            for w in cell.vertices
            if list(w) != vertex
        ]
        gens += [tuple(r) for r in cell.rays]
        cones.append(
            Cone.from_generators(gens, [tuple(line) for line in cell.lineality], complex_.ambient_dim)
        )
    return Fan(cones, complex_.ambient_dim, validate=False)


def refines(finer: GublerFan, coarser: GublerFan) -> RefinementResult:
    """Whether every cone of ``finer`` lies in a cone of ``coarser``.

    Raises:
        DimensionError: If the fans live over different lattices
    """
    if finer.ambient_dim != coarser.ambient_dim:
        raise DimensionError(
            f"fans over N of ranks {finer.ambient_dim} and {coarser.ambient_dim}"
        )
    cell_map: Dict[int, int] = {}
    ok = True
    for i, cone in enumerate(finer.cells):
        containing = [j for j, big in enumerate(coarser.cells) if big.contains_cone(cone)]
        if not containing:
            ok = False
            continue
        cell_map[i] = min(containing, key=lambda j: (coarser.cells[j].dim, j))
    return RefinementResult(ok, cell_map)


def common_refinement(first: GublerFan, second: GublerFan) -> GublerFan:
    """Fan of pairwise intersections of the cones of two fans.

    Walls of the two fans can cross away from N_Gamma, so the result lives
    over the smallest (1/d)Z containing both value groups and every vertex
    of the overlay.
    """
    if first.ambient_dim != second.ambient_dim:
        raise DimensionError(
            f"fans over N of ranks {first.ambient_dim} and {second.ambient_dim}"
        )
    pieces = {a.intersection(b) for a in first.maximal_cells for b in second.maximal_cells}
    coords = [x for piece in pieces for v in piece.height_one_vertices for x in v]
    group = first.value_group.join(second.value_group).join(ValueGroup.generated_by(coords))
    if group != first.value_group.join(second.value_group):
        logger.info(f"Overlay vertices need the value group {group}")
    assumed = True if first.support_full and second.support_full else None
    fan = GublerFan(pieces, group, first.ambient_dim, validate=False, assume_complete=assumed)
    logger.info(f"Common refinement has {len(fan.maximal_cells)} maximal cones")
    return fan


def minimal_cone_containing(fan: GublerFan, v: Sequence[RatLike]) -> Optional[int]:
    """Index of the smallest cone of the fan containing the ray through (v, 1)."""
    ray = ray_over_point(v)
    containing = [i for i, c in enumerate(fan.cells) if c.contains_cone(ray)]
    if not containing:
        return None
    return min(containing, key=lambda i: (fan.cells[i].dim, i))


def restrict_complex(complex_: PolyhedralComplex, base: PolyhedralComplex) -> PolyhedralComplex:
    """Nonempty intersections of the cells of ``complex_`` with those of ``base``.

    The result refines ``base``. Coverage is certified cell by cell: inside
    every maximal cell Q of ``base``, each codimension-one face of a
    full-dimensional piece that reaches the relative interior of Q must be
    shared by exactly two pieces.

    Raises:
        RefinementError: If the pieces fail to cover some cell of ``base``
    """
    if complex_.ambient_dim != base.ambient_dim:
        raise DimensionError("complexes live in different dimensions")
    pieces = set()
    for q in base.maximal_cells:
        for p in complex_.maximal_cells:
            meet = p.intersection(q)
            if meet is not None:
                pieces.add(meet)
    restricted = PolyhedralComplex(pieces, base.ambient_dim, validate=False)

    for q in base.maximal_cells:
        inside = [
            i for i, c in enumerate(restricted.cells) if c.dim == q.dim and q.cone.contains_cone(c.cone)
        ]
        if not inside:
            raise RefinementError(f"no piece covers the cell {q!r}")
        for i in inside:
            for f in restricted.faces_of(i):
                face = restricted.cells[f]
                if face.dim != q.dim - 1 or not q.contains_in_relative_interior(face.barycenter()):
                    continue
                sharing = [k for k in inside if f in restricted.faces_of(k)]
                if len(sharing) != 2:
                    raise RefinementError(
                        f"refinement leaves a gap next to {face!r} inside {q!r}"
                    )
    logger.debug(f"Restricted complex has {len(restricted.cells)} cells")
    return restricted
