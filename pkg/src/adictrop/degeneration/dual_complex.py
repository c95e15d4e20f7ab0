"""
Special fibers of Gubler models as dual complexes.

The special fiber of Y_Delta is a union of toric varieties Y_star(v), one per
vertex v of the height-one complex, glued along the orbits of the bounded
cells. Components are kept combinatorially: the vertex, its star fan and,
for curves and surfaces, the isomorphism type read off the star fan.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from adictrop.core.exactnum import QVector
from adictrop.core.linalg import inverse
from adictrop.errors import ComplexInvalidError, DimensionError, NotCompleteError, RefinementError
from adictrop.polyhedra.complexes import Fan, GublerFan, PolyhedralComplex, star_fan

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


class SurfaceTag(str, Enum):
    """Isomorphism types of smooth complete toric surfaces recognised here."""

    P2 = "P2"
    P1XP1 = "P1xP1"
    HIRZEBRUCH = "Hirzebruch"
    OTHER = "other"


@dataclass(frozen=True)
class SurfaceClassification:
    """A surface tag, with the Hirzebruch parameter a >= 1 when relevant."""

    tag: SurfaceTag
    parameter: Optional[int] = None

    def __str__(self) -> str:
        if self.tag == SurfaceTag.HIRZEBRUCH:
            return f"Hirzebruch({self.parameter})"
        return self.tag.value


def _half(v: IntVector) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _compare_angle(a: IntVector, b: IntVector) -> int:
    if _half(a) != _half(b):
        return _half(a) - _half(b)
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def cyclic_rays(fan: Fan) -> List[IntVector]:
    """Rays of a planar fan in counterclockwise order starting from the positive x-axis."""
    if fan.ambient_dim != 2:
        raise DimensionError("cyclic ray order needs a fan in the plane")
    return sorted(fan.rays, key=cmp_to_key(_compare_angle))


def _require_complete_planar(fan: Fan) -> None:
    if fan.ambient_dim != 2:
        raise DimensionError(f"expected a fan in R^2, got R^{fan.ambient_dim}")
    if not fan.is_complete():
        raise NotCompleteError("the fan does not cover R^2")


def classify_surface_fan(fan: Fan) -> SurfaceClassification:
    """Recognise P2, P1xP1 and Hirzebruch surfaces after GL(2, Z) normalization.

    Raises:
        NotCompleteError: If the fan is not complete
    """
    _require_complete_planar(fan)
    if not fan.is_smooth():
        return SurfaceClassification(SurfaceTag.OTHER)
    rays = cyclic_rays(fan)
    # send the first two rays to e1, e2
    basis = [[rays[0][0], rays[1][0]], [rays[0][1], rays[1][1]]]
    change = inverse(basis)
    normalized = [
        tuple(int(change[i][0] * r[0] + change[i][1] * r[1]) for i in range(2)) for r in rays
    ]
    if len(normalized) == 3:
        if normalized[2] == (-1, -1):
            return SurfaceClassification(SurfaceTag.P2)
        return SurfaceClassification(SurfaceTag.OTHER)
    if len(normalized) == 4:
        (x3, b), (c, y4) = normalized[2], normalized[3]
        if x3 == -1 and y4 == -1 and b * c == 0:
            a = abs(b) + abs(c)
            if a == 0:
                return SurfaceClassification(SurfaceTag.P1XP1)
            return SurfaceClassification(SurfaceTag.HIRZEBRUCH, a)
    return SurfaceClassification(SurfaceTag.OTHER)


def self_intersection_numbers(fan: Fan) -> Tuple[int, ...]:
    """The integers a_i with u_{i-1} + u_{i+1} = a_i u_i around a smooth complete planar fan.

    The divisor of ray u_i has self-intersection -a_i.

    Raises:
        NotCompleteError: If the fan is not complete
        ComplexInvalidError: If some ray relation is not integral (the fan is not smooth)
    """
    _require_complete_planar(fan)
    rays = cyclic_rays(fan)
    m = len(rays)
    out = []
    for i, u in enumerate(rays):
        s = tuple(a + b for a, b in zip(rays[i - 1], rays[(i + 1) % m]))
        if s[0] * u[1] - s[1] * u[0] != 0:
            raise ComplexInvalidError(f"neighbours of ray {u} do not sum to a multiple of it")
        k = (s[0] * u[0] + s[1] * u[1]) // (u[0] * u[0] + u[1] * u[1])
        if (k * u[0], k * u[1]) != s:
            raise ComplexInvalidError(f"neighbours of ray {u} sum to a non-integral multiple of it")
        out.append(k)
    return tuple(out)


def classify_by_self_intersections(fan: Fan) -> SurfaceClassification:
    """Independent classification from the cyclic sequence of ray relations."""
    _require_complete_planar(fan)
    if not fan.is_smooth():
        return SurfaceClassification(SurfaceTag.OTHER)
    seq = self_intersection_numbers(fan)
    if len(seq) == 3 and all(a == -1 for a in seq):
        return SurfaceClassification(SurfaceTag.P2)
    if len(seq) == 4:
        for shift in range(4):
            rotated = seq[shift:] + seq[:shift]
            a = rotated[1]
            if rotated[0] == 0 and rotated[2] == 0 and rotated[3] == -a:
                if a == 0:
                    return SurfaceClassification(SurfaceTag.P1XP1)
                return SurfaceClassification(SurfaceTag.HIRZEBRUCH, abs(a))
    return SurfaceClassification(SurfaceTag.OTHER)


@dataclass
class Component:
    """One irreducible component Y_star(v) of the special fiber.

    Attributes:
        cell_index: Index of the 0-cell {v} in the height-one complex
        vertex: The vertex v
        star: Its star fan
        kind: "P1" or "A1" on curves, the surface tag on surfaces, "toric" otherwise
        classification: Surface classification, for n = 2 with a complete star
    """

    cell_index: int
    vertex: QVector
    star: Fan
    kind: str
    classification: Optional[SurfaceClassification] = None


@dataclass
class DualComplex:
    """Combinatorial nerve of the special fiber.

    Attributes:
        fan: The Gubler fan the model comes from
        components: One per vertex of the height-one complex, in cell order
        edges: Component pairs joined by a bounded 1-cell, with that cell's index
        faces: Component sets of the bounded cells of dimension >= 2, with cell indices
        partial: True when the fan's support is not all of N_R x R_{>=0}
    """

    fan: GublerFan
    components: List[Component] = field(default_factory=list)
    edges: List[Tuple[int, int, int]] = field(default_factory=list)
    faces: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)
    partial: bool = False

    @property
    def complex(self) -> PolyhedralComplex:
        return self.fan.height_one

    def component_at(self, vertex: Sequence) -> int:
        """Position of the component whose vertex is the given point."""
        target = QVector(tuple(vertex))
        for i, comp in enumerate(self.components):
            if comp.vertex == target:
                return i
        raise KeyError(f"{target} is not a vertex of the special fiber")

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        for i, comp in enumerate(self.components):
            g.add_node(i, vertex=str(comp.vertex), kind=comp.kind)
        for a, b, cell in self.edges:
            g.add_edge(a, b, cell=cell)
        return g

    def kinds(self) -> List[str]:
        return [c.kind for c in self.components]


def _component_kind(star: Fan, n: int) -> Tuple[str, Optional[SurfaceClassification]]:
    complete = star.is_complete()
    if n == 1:
        return ("P1" if complete else "A1"), None
    if n == 2:
        if not complete:
            return "open", None
        classification = classify_surface_fan(star)
        return str(classification), classification
    return "toric", None


def special_fiber(fan: GublerFan) -> DualComplex:
    """Components, nodes and higher incidences of the special fiber of Y_Delta.

    A fan without full support gives a partial model; the result is flagged
    and a warning is logged.
    """
    complex_ = fan.height_one
    n = complex_.ambient_dim
    dual = DualComplex(fan, partial=not fan.support_full)
    if dual.partial:
        logger.warning("Support is not full: the model is not proper, special fiber is partial")

    position: Dict[int, int] = {}
    for index in complex_.indices_of_dim(0):
        vertex = complex_.cells[index].vertices[0]
        star = star_fan(complex_, vertex)
        kind, classification = _component_kind(star, n)
        position[index] = len(dual.components)
        dual.components.append(Component(index, vertex, star, kind, classification))

    for index, cell in enumerate(complex_.cells):
        if cell.dim < 1 or not cell.is_bounded():
            continue
        members = tuple(position[f] for f in complex_.faces_of(index) if f in position)
        if cell.dim == 1:
            a, b = members
            dual.edges.append((a, b, index))
        else:
            dual.faces.append((members, index))

    logger.info(
        f"Special fiber: {len(dual.components)} components, {len(dual.edges)} nodes, "
        f"{len(dual.faces)} higher faces"
    )
    return dual


def component_cell_map(finer: PolyhedralComplex, coarser: PolyhedralComplex) -> Dict[int, int]:
    """Cell of ``finer`` -> minimal cell of ``coarser`` containing it.

    Raises:
        RefinementError: If some cell of ``finer`` is not covered
    """
    mapping = {}
    for i, cell in enumerate(finer.cells):
        target = coarser.cell_containing_in_relative_interior(cell.barycenter())
        if target is None:
            raise RefinementError(f"cell {i} of the finer complex leaves the coarser support")
        mapping[i] = target
    return mapping
