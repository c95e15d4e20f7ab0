"""Tilted semigroups of admissible cones."""

from adictrop.tilted.semigroup import (
    BinomialRelation,
    BoxOracleReport,
    SemigroupElement,
    TiltedSemigroup,
    algebra_generators,
    binomial_relations,
    face_semigroups,
    generator_names,
    render_generators,
    tilted_semigroup,
    verify_hilbert_basis,
)

__all__ = [
    "BinomialRelation",
    "BoxOracleReport",
    "SemigroupElement",
    "TiltedSemigroup",
    "algebra_generators",
    "binomial_relations",
    "face_semigroups",
    "generator_names",
    "render_generators",
    "tilted_semigroup",
    "verify_hilbert_basis",
]
