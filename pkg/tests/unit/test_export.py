"""
Unit tests for SVG and DOT export.
"""

import networkx as nx
import pytest
from lxml import etree

from adictrop.algebra.parser import parse_poly
from adictrop.degeneration.dual_complex import special_fiber
from adictrop.degeneration.metrized import build_metrized_complex
from adictrop.errors import DimensionError
from adictrop.export.dot import dual_complex_to_dot, graph_to_dot, metrized_to_dot, poset_to_dot
from adictrop.export.svg import SVG_NS, SvgCanvas, complex_to_svg, metrized_to_svg, tropical_to_svg
from adictrop.oracles import interval_complex
from adictrop.polyhedra.complexes import PolyhedralComplex, fan_over_complex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tropical.hypersurface import tropicalize


def elements(svg: str, tag: str):
    root = etree.fromstring(svg.encode("utf-8"))
    return root.findall(f"{{{SVG_NS}}}{tag}")


class TestSvg:
    """Tests for SVG drawings."""

    def test_empty_canvas(self):
        root = etree.fromstring(SvgCanvas().to_string().encode("utf-8"))
        assert root.tag == f"{{{SVG_NS}}}svg"
        assert root.get("viewBox") == "-40 -40 81 81"

    def test_tropical_line(self):
        svg = tropical_to_svg(tropicalize(parse_poly("x + y + 1")))
        lines = elements(svg, "line")
        assert len(lines) == 3
        assert all(line.get("class") == "ray" for line in lines)
        assert len(elements(svg, "circle")) == 1
        assert elements(svg, "text") == []

    def test_weight_label(self):
        svg = tropical_to_svg(tropicalize(parse_poly("x^2 + 1")))
        assert [t.text for t in elements(svg, "text")] == ["2"]

    def test_deterministic(self):
        f = parse_poly("x + y + 1 + t*x*y")
        assert tropical_to_svg(tropicalize(f)) == tropical_to_svg(tropicalize(f))

    def test_interval_with_labels(self):
        complex_ = interval_complex()
        labels = {i: "P1" for i in complex_.indices_of_dim(0)}
        svg = complex_to_svg(complex_, labels)
        classes = sorted(line.get("class") for line in elements(svg, "line"))
        assert classes == ["edge", "ray", "ray"]
        assert len(elements(svg, "circle")) == 2
        assert [t.text for t in elements(svg, "text")] == ["P1", "P1"]

    def test_scale(self):
        complex_ = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        line = elements(complex_to_svg(complex_, scale=10), "line")[0]
        assert (line.get("x1"), line.get("x2")) == ("0", "10")

    def test_three_dimensions_rejected(self):
        cube_corner = PolyhedralComplex([Polyhedron.from_points([(0, 0, 0)])])
        with pytest.raises(DimensionError):
            complex_to_svg(cube_corner)

    def test_metrized_labels(self):
        mc = build_metrized_complex(parse_poly("x + y + 1 + t*x*y"))
        texts = [t.text for t in elements(metrized_to_svg(mc), "text")]
        assert "1" in texts
        assert "x + y + 1" in texts


class TestDot:
    """Tests for DOT text."""

    def test_undirected(self):
        g = nx.Graph()
        g.add_edge("a", "b")
        assert graph_to_dot(g) == 'graph "G" {\n  "a";\n  "b";\n  "a" -- "b";\n}\n'

    def test_directed_with_attributes(self):
        g = nx.DiGraph()
        g.add_node(1, label="one")
        g.add_node(2)
        g.add_edge(1, 2)
        assert graph_to_dot(g, "H") == 'digraph "H" {\n  "1" [label="one"];\n  "2";\n  "1" -> "2";\n}\n'

    def test_quoting(self):
        g = nx.Graph()
        g.add_node('say "hi"')
        assert '"say \\"hi\\""' in graph_to_dot(g)

    def test_poset(self):
        text = poset_to_dot(interval_complex())
        assert text.startswith('digraph "faces" {')
        assert text.count("->") == 4
        assert "dim 0" in text

    def test_special_fiber(self):
        text = dual_complex_to_dot(special_fiber(fan_over_complex(interval_complex())))
        assert text.startswith('graph "special_fiber" {')
        assert "P1 @ (0)" in text
        assert text.count(" -- ") == 1

    def test_metrized_legs(self):
        mc = build_metrized_complex(parse_poly("x + y + 1"))
        text = metrized_to_dot(mc)
        assert text.count('label="inf"') == 3
        assert text.count('shape="point"') == 3
