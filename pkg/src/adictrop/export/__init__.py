"""JSON schemas, SVG drawings and DOT graphs."""

from adictrop.export.dot import dual_complex_to_dot, graph_to_dot, metrized_to_dot, poset_to_dot
from adictrop.export.schemas import SCHEMA, Artifact, ComplexModel, ErrorArtifact
from adictrop.export.svg import SvgCanvas, complex_to_svg, metrized_to_svg, tropical_to_svg

__all__ = [
    "dual_complex_to_dot",
    "graph_to_dot",
    "metrized_to_dot",
    "poset_to_dot",
    "SCHEMA",
    "Artifact",
    "ComplexModel",
    "ErrorArtifact",
    "SvgCanvas",
    "complex_to_svg",
    "metrized_to_svg",
    "tropical_to_svg",
]
