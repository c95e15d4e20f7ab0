"""
SVG drawings of complexes in the line and the plane.

Only flat primitives are produced: points, segments and text labels.
Coordinates stay exact until the last step, where they are scaled and
rounded to integers, so identical inputs give byte-identical files.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from lxml import etree as ET

from adictrop.core.exactnum import format_rat
from adictrop.degeneration.metrized import MetrizedComplex
from adictrop.errors import DimensionError
from adictrop.polyhedra.complexes import PolyhedralComplex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tropical.hypersurface import TropicalHypersurface

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
NSMAP = {None: SVG_NS}
Point = Tuple[Fraction, Fraction]


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def _planar(v: Sequence[Fraction]) -> Point:
    if len(v) == 1:
        return Fraction(v[0]), Fraction(0)
    return Fraction(v[0]), Fraction(v[1])


@dataclass
class SvgCanvas:
    """Collects exact primitives and writes them as one SVG document.

    Attributes:
        scale: Pixels per unit
        margin: Pixels around the bounding box
    """

    scale: int = 80
    margin: int = 40
    points: List[Tuple[Point, str]] = field(default_factory=list)
    segments: List[Tuple[Point, Point, str]] = field(default_factory=list)
    labels: List[Tuple[Point, str, str]] = field(default_factory=list)

    def add_point(self, p: Point, css: str = "vertex") -> None:
        self.points.append((p, css))

    def add_segment(self, a: Point, b: Point, css: str = "edge") -> None:
        self.segments.append((a, b, css))

    def add_label(self, p: Point, text: str, css: str = "label") -> None:
        self.labels.append((p, text, css))

    def _xy(self, p: Point) -> Tuple[int, int]:
        # y grows downward in SVG
        return round(p[0] * self.scale), round(-p[1] * self.scale)

    def _bounds(self) -> Tuple[int, int, int, int]:
        coords = [self._xy(p) for p, _ in self.points]
        coords += [self._xy(p) for a, b, _ in self.segments for p in (a, b)]
        coords += [self._xy(p) for p, _, _ in self.labels]
        if not coords:
            return 0, 0, 1, 1
        xs = [c[0] for c in coords]
        ys = [c[1] for c in coords]
        return min(xs), min(ys), max(xs), max(ys)

    def to_element(self) -> ET._Element:
        x0, y0, x1, y1 = self._bounds()
        m = self.margin
        svg = ET.Element(
            _tag("svg"),
            nsmap=NSMAP,
            version="1.1",
            viewBox=f"{x0 - m} {y0 - m} {x1 - x0 + 2 * m} {y1 - y0 + 2 * m}",
        )
        style = ET.SubElement(svg, _tag("style"))
        style.text = (
            ".edge {stroke: black; stroke-width: 2;} "
            ".ray {stroke: black; stroke-width: 2; stroke-dasharray: 6 3;} "
            ".vertex {fill: black;} "
            ".label {font-family: monospace; font-size: 12px;}"
        )
        for a, b, css in self.segments:
            (ax, ay), (bx, by) = self._xy(a), self._xy(b)
            ET.SubElement(
                svg, _tag("line"), x1=str(ax), y1=str(ay), x2=str(bx), y2=str(by), **{"class": css}
            )
        for p, css in self.points:
            x, y = self._xy(p)
            ET.SubElement(svg, _tag("circle"), cx=str(x), cy=str(y), r="4", **{"class": css})
        for p, text, css in self.labels:
            x, y = self._xy(p)
            node = ET.SubElement(svg, _tag("text"), x=str(x + 6), y=str(y - 6), **{"class": css})
            node.text = text
        return svg

    def to_string(self) -> str:
        return ET.tostring(self.to_element(), pretty_print=True, encoding="unicode")


def _reach(complex_: PolyhedralComplex) -> Fraction:
    """How far rays are drawn past the bounded part."""
    coords = [abs(x) for v in complex_.vertices for x in v]
    return max(coords, default=Fraction(0)) + 1


def _draw_cell(canvas: SvgCanvas, cell: Polyhedron, reach: Fraction) -> None:
    if cell.dim != 1:
        return
    if cell.lineality:
        line = [Fraction(x) for x in cell.lineality[0]]
        base = cell.vertices[0] if cell.vertices else tuple(Fraction(0) for _ in line)
        step = reach / max(abs(x) for x in line)
        low = [c - step * x for c, x in zip(base, line)]
        high = [c + step * x for c, x in zip(base, line)]
        canvas.add_segment(_planar(low), _planar(high), "ray")
        return
    if len(cell.vertices) == 2:
        canvas.add_segment(_planar(cell.vertices[0]), _planar(cell.vertices[1]))
        return
    start = cell.vertices[0]
    ray = [Fraction(x) for x in cell.rays[0]]
    step = reach / max(abs(x) for x in ray)
    end = [s + step * r for s, r in zip(start, ray)]
    canvas.add_segment(_planar(start), _planar(end), "ray")


def _require_planar(ambient_dim: int) -> None:
    if ambient_dim > 2:
        raise DimensionError(f"SVG export draws complexes in dimension <= 2, got {ambient_dim}")


def complex_to_svg(
    complex_: PolyhedralComplex,
    vertex_labels: Optional[Dict[int, str]] = None,
    scale: int = 80,
) -> str:
    """Vertices and 1-cells of a complex; rays are dashed and cut at a fixed reach.

    Raises:
        DimensionError: If the complex lives in dimension 3 or more
    """
    _require_planar(complex_.ambient_dim)
    canvas = SvgCanvas(scale=scale)
    reach = _reach(complex_)
    for cell in complex_.cells:
        _draw_cell(canvas, cell, reach)
    for i in complex_.indices_of_dim(0):
        p = _planar(complex_.cells[i].vertices[0])
        canvas.add_point(p)
        if vertex_labels and i in vertex_labels:
            canvas.add_label(p, vertex_labels[i])
    return canvas.to_string()


def tropical_to_svg(trop: TropicalHypersurface, scale: int = 80) -> str:
    """Corner locus with the lattice weight printed on edges of weight > 1."""
    complex_ = trop.complex
    _require_planar(complex_.ambient_dim)
    canvas = SvgCanvas(scale=scale)
    reach = _reach(complex_)
    for i, cell in enumerate(complex_.cells):
        _draw_cell(canvas, cell, reach)
        if cell.dim == complex_.ambient_dim - 1 and i in trop.dual_cells:
            weight = trop.dual_lattice_length(i)
            if weight > 1:
                canvas.add_label(_planar(cell.barycenter()), str(weight))
    for v in complex_.vertices:
        canvas.add_point(_planar(v))
    logger.debug(f"Drew {len(complex_.cells)} cells")
    return canvas.to_string()


def metrized_to_svg(mc: MetrizedComplex, scale: int = 80) -> str:
    """Metrized complex: lengths at edge midpoints, decorations next to vertices."""
    canvas = SvgCanvas(scale=scale)
    reach = _reach(mc.base)
    for edge in mc.edges:
        cell = mc.base.cells[edge.cell_index]
        _draw_cell(canvas, cell, reach)
        if edge.length is not None:
            a, b = mc.vertices[edge.source], mc.vertices[edge.target]  # type: ignore[index]
            mid = [(x + y) / 2 for x, y in zip(a, b)]
            canvas.add_label(_planar(mid), format_rat(edge.length), "label")
    for v, decoration in zip(mc.vertices, mc.decorations):
        p = _planar(v)
        canvas.add_point(p)
        canvas.add_label(p, decoration.to_text())
    return canvas.to_string()
