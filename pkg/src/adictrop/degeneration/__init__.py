"""Special fibers, metrized complexes and refinement towers."""

from adictrop.degeneration.dual_complex import (
    Component,
    DualComplex,
    SurfaceClassification,
    SurfaceTag,
    classify_by_self_intersections,
    classify_surface_fan,
    component_cell_map,
    self_intersection_numbers,
    special_fiber,
)
from adictrop.degeneration.metrized import (
    CellCount,
    MetrizedComplex,
    MetrizedEdge,
    adic_point_count,
    build_metrized_complex,
    fiber_components,
)
from adictrop.degeneration.tower import (
    RefinementTower,
    TowerStage,
    TraceReport,
    stage_cell_map,
    tower_simulate,
)

__all__ = [
    "Component",
    "DualComplex",
    "SurfaceClassification",
    "SurfaceTag",
    "classify_by_self_intersections",
    "classify_surface_fan",
    "component_cell_map",
    "self_intersection_numbers",
    "special_fiber",
    "CellCount",
    "MetrizedComplex",
    "MetrizedEdge",
    "adic_point_count",
    "build_metrized_complex",
    "fiber_components",
    "RefinementTower",
    "TowerStage",
    "TraceReport",
    "stage_cell_map",
    "tower_simulate",
]
