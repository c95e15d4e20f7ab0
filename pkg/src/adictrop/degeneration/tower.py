"""
Finite refinement towers over a decomposition of the real line.

Each stage subdivides the cell next to a fixed vertex v at a new point
closer to v. The special fiber gains one projective line per stage, while
the component over v and its star fan never change. The nodes next to that
component march toward v and are traced as a limit boundary point.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from adictrop.core.exactnum import QVector, RatLike, ValueGroup, to_rat
from adictrop.degeneration.dual_complex import DualComplex, special_fiber
from adictrop.errors import DimensionError, InsertionOrderError, RationalityError, RefinementError
from adictrop.polyhedra.complexes import (
    Fan,
    GublerFan,
    PolyhedralComplex,
    fan_over_cells,
    refines,
    star_fan,
)
from adictrop.polyhedra.polyhedron import Polyhedron, cone_over

logger = logging.getLogger(__name__)

LIMIT_BOUNDARY = "limit-boundary"
UNDETERMINED = "undetermined"


@dataclass
class TowerStage:
    """One decomposition in the tower and its special fiber.

    Attributes:
        index: Stage number, 0 for the base
        complex: The decomposition of R at this stage
        fan: Its Gubler fan
        dual: Special fiber of the model
        component_count: Number of components
        p1_count: Components isomorphic to P1 (interior vertices)
        chain_cell: Index of the 1-cell next to v on the insertion side
        node: Far endpoint of that cell when it is bounded; the node on the v-component
        v_star: Star fan of v
    """

    index: int
    complex: PolyhedralComplex
    fan: GublerFan
    dual: DualComplex
    component_count: int
    p1_count: int
    chain_cell: int
    node: Optional[QVector]
    v_star: Fan


@dataclass
class TraceReport:
    """Symbolic record of the limit of the nodes next to the v-component.

    Attributes:
        vertex: The distinguished vertex v
        direction: Primitive direction from v toward the insertions
        nodes: Node position at each stage (None while the cell is unbounded)
        chain_cells: Cell index of the 1-cell next to v at each stage
        classification: "limit-boundary" when the chain is strictly nested and
            the v-star is fixed, otherwise "undetermined"
    """

    vertex: QVector
    direction: int
    nodes: List[Optional[QVector]]
    chain_cells: List[int]
    classification: str


@dataclass
class RefinementTower:
    """Stages, each refining the one before, with their component maps.

    Attributes:
        vertex: The distinguished vertex v
        value_group: Gamma used to cone the stages
        stages: Stage 0 is the base decomposition
        component_maps: Entry i maps cells of stage i + 1 to cells of stage i
        trace: Limit bookkeeping for the nodes next to v
    """

    vertex: QVector
    value_group: ValueGroup
    stages: List[TowerStage] = field(default_factory=list)
    component_maps: List[Dict[int, int]] = field(default_factory=list)
    trace: Optional[TraceReport] = None

    def compose_maps(self, i: int, j: int) -> Dict[int, int]:
        """Cells of stage j -> cells of stage i (i <= j), composing one-step maps."""
        if not 0 <= i <= j < len(self.stages):
            raise IndexError(f"no map from stage {j} to stage {i}")
        mapping = {c: c for c in range(len(self.stages[j].complex.cells))}
        for k in range(j - 1, i - 1, -1):
            step = self.component_maps[k]
            mapping = {c: step[target] for c, target in mapping.items()}
        return mapping

    def direct_map(self, i: int, j: int) -> Dict[int, int]:
        """The same map read off in one step from the fan refinement."""
        return stage_cell_map(self.stages[j], self.stages[i])

    def component_counts(self) -> List[int]:
        return [s.component_count for s in self.stages]

    def star_fixed(self) -> bool:
        first = self.stages[0].v_star
        return all(s.v_star == first for s in self.stages[1:])

    def monotone(self) -> bool:
        counts = self.component_counts()
        return all(a < b for a, b in zip(counts, counts[1:]))


def _split(cell: Polyhedron, x: Fraction) -> List[Polyhedron]:
    pieces = []
    for normal, offset in (((-1,), x), ((1,), -x)):
        half = Polyhedron.from_halfspaces([(normal, offset)], ambient_dim=1)
        meet = cell.intersection(half)
        if meet is not None:
            pieces.append(meet)
    return pieces


def _chain_cell(complex_: PolyhedralComplex, v: Fraction, direction: int) -> int:
    """The 1-cell containing v whose interior points lie on the given side."""
    for j in complex_.cofaces_of(complex_.vertex_index((v,))):
        cell = complex_.cells[j]
        if cell.dim != 1:
            continue
        far = [w[0] for w in cell.vertices if w[0] != v]
        if far:
            if (far[0] - v) * direction > 0:
                return j
        elif cell.rays and cell.rays[0][0] * direction > 0:
            return j
    raise InsertionOrderError(f"vertex {v} has no neighbouring cell in direction {direction:+d}")


def _far_endpoint(cell: Polyhedron, v: Fraction) -> Optional[QVector]:
    for w in cell.vertices:
        if w[0] != v:
            return w
    return None


def _check_insertions(
    complex_: PolyhedralComplex, v: Fraction, points: Sequence[Fraction]
) -> int:
    if not points:
        return 1
    first = points[0]
    if first == v:
        raise InsertionOrderError(f"insertion {first} coincides with the vertex")
    direction = 1 if first > v else -1
    chain = complex_.cells[_chain_cell(complex_, v, direction)]
    if not chain.contains_in_relative_interior((first,)):
        raise InsertionOrderError(
            f"insertion {first} is not strictly between v={v} and its neighbour"
        )
    previous = abs(first - v)
    for x in points[1:]:
        if (x - v) * direction <= 0:
            raise InsertionOrderError(f"insertion {x} is on the other side of v={v}")
        distance = abs(x - v)
        if distance >= previous:
            raise InsertionOrderError(
                f"insertion {x} is not closer to v={v} than the previous one"
            )
        previous = distance
    return direction


def _stage(
    index: int, cells: List[Polyhedron], group: ValueGroup, v: Fraction, direction: int
) -> TowerStage:
    complex_ = PolyhedralComplex(cells, 1)
    fan = fan_over_cells(complex_, group)
    dual = special_fiber(fan)
    chain = _chain_cell(complex_, v, direction)
    v_star = star_fan(complex_, (v,))
    return TowerStage(
        index=index,
        complex=complex_,
        fan=fan,
        dual=dual,
        component_count=len(dual.components),
        p1_count=sum(1 for kind in dual.kinds() if kind == "P1"),
        chain_cell=chain,
        node=_far_endpoint(complex_.cells[chain], v),
        v_star=v_star,
    )


def stage_cell_map(finer: TowerStage, coarser: TowerStage) -> Dict[int, int]:
    """Cells of ``finer`` -> cells of ``coarser``, read off ``refines(finer.fan, coarser.fan)``.

    Each cell P goes to the height-one slice of the minimal coarser cone
    containing the cone over P.

    Raises:
        RefinementError: If the finer fan does not refine the coarser one
    """
    result = refines(finer.fan, coarser.fan)
    if not result:
        raise RefinementError(f"stage {finer.index} does not refine stage {coarser.index}")
    mapping = {}
    for i, cell in enumerate(finer.complex.cells):
        target = coarser.fan.cells[result.cell_map[finer.fan.index_of(cone_over(cell))]]
        mapping[i] = coarser.complex.index_of(target.height_one_slice())
    return mapping


def _trace(tower: RefinementTower, direction: int) -> TraceReport:
    v = tower.vertex
    chain_cells = [s.chain_cell for s in tower.stages]
    nested = all(
        tower.component_maps[i][chain_cells[i + 1]] == chain_cells[i]
        for i in range(len(tower.stages) - 1)
    )
    distances = [abs(s.node[0] - v[0]) for s in tower.stages if s.node is not None]
    shrinking = all(a > b for a, b in zip(distances, distances[1:]))
    classification = (
        LIMIT_BOUNDARY
        if len(tower.stages) > 1 and nested and shrinking and tower.star_fixed()
        else UNDETERMINED
    )
    return TraceReport(v, direction, [s.node for s in tower.stages], chain_cells, classification)


def tower_simulate(
    base: PolyhedralComplex,
    insertions: Sequence[RatLike],
    vertex: Optional[RatLike] = None,
    group: Optional[ValueGroup] = None,
) -> RefinementTower:
    """Insert points one at a time next to a vertex and follow the special fibers.

    Args:
        base: Decomposition of R (possibly not covering it, as for a single chart)
        insertions: Points strictly between v and its neighbour, strictly approaching v
        vertex: The vertex v; defaults to the endpoint of the first insertion's cell
            nearest to the last insertion
        group: Gamma; defaults to the smallest (1/d)Z containing every vertex and insertion

    Raises:
        DimensionError: If the base does not live in R
        RationalityError: If a point is not Gamma-rational for the given group
        InsertionOrderError: If the insertions are misplaced or do not approach v
        RefinementError: If a stage fails to refine its predecessor
    """
    if base.ambient_dim != 1:
        raise DimensionError(f"towers are simulated over R, got R^{base.ambient_dim}")
    points = [to_rat(x) for x in insertions]
    vertex_coords = [w[0] for w in base.vertices]

    if vertex is None:
        if not points:
            raise InsertionOrderError("a tower without insertions needs an explicit vertex")
        containing = base.cell_containing_in_relative_interior((points[0],))
        if containing is None or base.cells[containing].dim != 1:
            raise InsertionOrderError(f"insertion {points[0]} is not inside a 1-cell of the base")
        ends = [w[0] for w in base.cells[containing].vertices]
        v = min(ends, key=lambda e: (abs(e - points[-1]), e))
    else:
        v = to_rat(vertex)
    base.vertex_index((v,))

    if group is None:
        group = ValueGroup.generated_by(vertex_coords + points)
    else:
        for x in vertex_coords + points:
            if not group.contains(x):
                raise RationalityError(f"{x} is not in {group}")

    direction = _check_insertions(base, v, points)
    tower = RefinementTower(QVector((v,)), group)
    cells = list(base.maximal_cells)
    tower.stages.append(_stage(0, cells, group, v, direction))

    for i, x in enumerate(points, start=1):
        target = next(
            k for k, c in enumerate(cells) if c.dim == 1 and c.contains_in_relative_interior((x,))
        )
        cells = cells[:target] + _split(cells[target], x) + cells[target + 1 :]
        stage = _stage(i, cells, group, v, direction)
        previous = tower.stages[-1]
        tower.component_maps.append(stage_cell_map(stage, previous))
        tower.stages.append(stage)
        logger.info(
            f"Stage {i}: inserted {x}, {stage.component_count} components, "
            f"{stage.p1_count} projective lines"
        )

    tower.trace = _trace(tower, direction)
    logger.info(f"Tower of {len(tower.stages)} stages, trace point: {tower.trace.classification}")
    return tower
