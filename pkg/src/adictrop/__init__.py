"""adictrop: exact tropicalization and Gubler-model combinatorics over valued fields."""

__version__ = "0.1.0"

from adictrop.algebra import FieldProfile, LaurentPolynomial, ResidueField, parse_poly
from adictrop.core import QVector, ValueGroup
from adictrop.degeneration import (
    build_metrized_complex,
    classify_surface_fan,
    special_fiber,
    tower_simulate,
)
from adictrop.errors import AdicTropError
from adictrop.models import JobConfig
from adictrop.polyhedra import AdmissibleCone, PolyhedralComplex, Polyhedron, fan_over_complex
from adictrop.runner import JobRunner, RunResult, run
from adictrop.tilted import binomial_relations, tilted_semigroup
from adictrop.tropical import exploded_fibration, initial_form, tropicalize

__all__ = [
    "__version__",
    "FieldProfile",
    "LaurentPolynomial",
    "ResidueField",
    "parse_poly",
    "QVector",
    "ValueGroup",
    "build_metrized_complex",
    "classify_surface_fan",
    "special_fiber",
    "tower_simulate",
    "AdicTropError",
    "JobConfig",
    "AdmissibleCone",
    "PolyhedralComplex",
    "Polyhedron",
    "fan_over_complex",
    "JobRunner",
    "RunResult",
    "run",
    "binomial_relations",
    "tilted_semigroup",
    "exploded_fibration",
    "initial_form",
    "tropicalize",
]
