"""Tropical hypersurfaces, initial forms and the exploded fibration."""

from adictrop.tropical.exploded import (
    ExplodedFibrationData,
    OrbitStatus,
    OrbitStratum,
    exploded_fibration,
    extended_tropicalize,
)
from adictrop.tropical.hypersurface import (
    TropicalHypersurface,
    initial_form,
    trop_value,
    tropicalize,
)

__all__ = [
    "ExplodedFibrationData",
    "OrbitStatus",
    "OrbitStratum",
    "exploded_fibration",
    "extended_tropicalize",
    "TropicalHypersurface",
    "initial_form",
    "trop_value",
    "tropicalize",
]
