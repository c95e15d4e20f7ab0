"""Rational cones, polyhedra, complexes and Gamma-admissible fans."""

from adictrop.polyhedra.complexes import (
    Fan,
    GublerFan,
    PolyhedralComplex,
    RefinementResult,
    common_refinement,
    fan_over_cells,
    fan_over_complex,
    height_one_complex,
    minimal_cone_containing,
    recession_fan,
    refines,
    restrict_complex,
    star_fan,
)
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import (
    AdmissibleCone,
    Halfspace,
    Polyhedron,
    cone_over,
    ray_over_point,
)

__all__ = [
    "Fan",
    "GublerFan",
    "PolyhedralComplex",
    "RefinementResult",
    "common_refinement",
    "fan_over_cells",
    "fan_over_complex",
    "height_one_complex",
    "minimal_cone_containing",
    "recession_fan",
    "refines",
    "restrict_complex",
    "star_fan",
    "Cone",
    "AdmissibleCone",
    "Halfspace",
    "Polyhedron",
    "cone_over",
    "ray_over_point",
]
