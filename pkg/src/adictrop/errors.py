"""
Exception hierarchy for adictrop.

Every error raised by the library derives from AdicTropError, which is a
ValueError so callers that only guard against bad input keep working. Each
subclass carries a stable ``code`` that the CLI reports in its error JSON.
"""

from typing import Any, Dict, Optional


class AdicTropError(ValueError):
    """Base class for all adictrop errors.

    Attributes:
        code: Stable machine-readable identifier of the error kind
    """

    code = "adictrop_error"

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for the CLI error channel."""
        return {"error": self.code, "message": str(self)}


class DimensionError(AdicTropError):
    """Vectors, polynomials or fans live in different ambient lattices."""

    code = "dimension_mismatch"


class ParseError(AdicTropError):
    """Text input does not follow the polynomial grammar.

    Attributes:
        position: Zero-based character offset of the offending token
    """

    code = "parse_error"

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        if self.position is not None:
            data["position"] = self.position
        return data


class CancellationAmbiguityError(ParseError):
    """Two terms share an exponent and their leading residues cancel."""

    code = "cancellation_ambiguity"


class FieldProfileError(AdicTropError):
    """Residue field descriptor or value group is invalid."""

    code = "field_profile"


class RationalityError(AdicTropError):
    """A point is required to be Gamma-rational and is not."""

    code = "not_gamma_rational"


class AdmissibilityError(AdicTropError):
    """A cone or complex is not Gamma-admissible."""

    code = "not_admissible"


class ComplexInvalidError(AdicTropError):
    """Two cells meet in something that is not a common face."""

    code = "complex_invalid"


class NotCompleteError(AdicTropError):
    """A complex or fan does not cover its ambient space."""

    code = "not_complete"


class RefinementError(AdicTropError):
    """A decomposition does not refine the one it is required to refine."""

    code = "refinement_failure"


class HomogeneityError(AdicTropError):
    """A projective input is not homogeneous with nonnegative exponents."""

    code = "not_homogeneous"


class InsertionOrderError(AdicTropError):
    """Tower insertions do not approach the distinguished vertex."""

    code = "insertion_order"


class ConstancyError(AdicTropError):
    """Initial forms differ at two relative-interior points of one cell."""

    code = "fiber_not_constant"


class ConfigError(AdicTropError):
    """Job configuration cannot be used."""

    code = "config_invalid"


class EmptyPolyhedronError(AdicTropError):
    """A polyhedron described by halfspaces has no points."""

    code = "empty_polyhedron"


class ZeroPolynomialError(AdicTropError):
    """The zero polynomial has no tropicalization, initial form or Newton polytope."""

    code = "zero_polynomial"
