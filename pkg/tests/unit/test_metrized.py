"""
Unit tests for metrized complexes and finite-stage point counts.
"""

from fractions import Fraction

import pytest

from adictrop.algebra.field import FieldProfile, ResidueField
from adictrop.algebra.parser import parse_poly
from adictrop.algebra.polynomial import ResiduePolynomial
from adictrop.core.exactnum import QVector
from adictrop.degeneration.metrized import (
    adic_point_count,
    build_metrized_complex,
    fiber_components,
    lattice_length,
)
from adictrop.errors import DimensionError, RationalityError
from adictrop.oracles import tropical_line
from adictrop.polyhedra.complexes import PolyhedralComplex
from adictrop.polyhedra.polyhedron import Polyhedron
from adictrop.tropical.hypersurface import initial_form, tropicalize


def line_with_unit_vertices() -> PolyhedralComplex:
    """The tropical line with extra vertices at (1, 0), (0, 1) and (-1, -1)."""
    origin = (0, 0)
    return PolyhedralComplex(
        [
            Polyhedron.from_points([origin, (1, 0)]),
            Polyhedron.from_points([origin, (0, 1)]),
            Polyhedron.from_points([origin, (-1, -1)]),
            Polyhedron.from_points([(1, 0)], rays=[(1, 0)]),
            Polyhedron.from_points([(0, 1)], rays=[(0, 1)]),
            Polyhedron.from_points([(-1, -1)], rays=[(-1, -1)]),
        ]
    )


def split_bounded_edge(f, point) -> PolyhedralComplex:
    """Trop(f) with its bounded edges subdivided at a given point."""
    cells = []
    for cell in tropicalize(f).complex.maximal_cells:
        if cell.is_bounded() and cell.contains(point):
            cells.append(Polyhedron.from_points([cell.vertices[0], point]))
            cells.append(Polyhedron.from_points([point, cell.vertices[1]]))
        else:
            cells.append(cell)
    return PolyhedralComplex(cells)


class TestLatticeLength:
    """Tests for lattice_length."""

    def test_primitive_segment(self):
        assert lattice_length((0, 0), (1, 0)) == 1

    def test_non_primitive_direction(self):
        assert lattice_length((0, 0), (2, 4)) == 2

    def test_rational_endpoint(self):
        assert lattice_length((0, 0), (Fraction(-1, 2), Fraction(-1, 2))) == Fraction(1, 2)

    def test_degenerate(self):
        with pytest.raises(DimensionError):
            lattice_length((1, 1), (1, 1))


class TestBuildMetrizedComplex:
    """Tests for build_metrized_complex."""

    def test_tropical_line(self):
        mc = build_metrized_complex(tropical_line())
        assert mc.vertices == [QVector.of(0, 0)]
        assert [d.to_text() for d in mc.decorations] == ["x + y + 1"]
        assert len(mc.legs()) == 3
        assert mc.bounded_edges() == []

    def test_refined_line(self):
        f = tropical_line()
        mc = build_metrized_complex(f, line_with_unit_vertices())
        assert len(mc.vertices) == 4
        decorations = {str(v): d.to_text() for v, d in zip(mc.vertices, mc.decorations)}
        assert decorations == {
            "(-1,-1)": "x + y",
            "(0,0)": "x + y + 1",
            "(0,1)": "x + 1",
            "(1,0)": "y + 1",
        }
        assert [e.length for e in mc.bounded_edges()] == [1, 1, 1]
        assert mc.total_length() == 3
        assert len(mc.legs()) == 3

    def test_decorations_match_initial_forms(self):
        f = tropical_line()
        mc = build_metrized_complex(f, line_with_unit_vertices())
        for v, decoration in zip(mc.vertices, mc.decorations):
            assert decoration == initial_form(f, v)

    def test_bounded_edge(self):
        mc = build_metrized_complex(parse_poly("x + y + 1 + t*x*y"))
        assert mc.vertices == [QVector.of(-1, -1), QVector.of(0, 0)]
        (edge,) = mc.bounded_edges()
        assert edge.length == 1
        assert edge.fiber.to_text() == "x + y"
        assert len(mc.legs()) == 4

    def test_length_is_additive_under_subdivision(self):
        profile = FieldProfile.from_descriptor("Q", 2)
        f = parse_poly("x + y + 1 + t*x*y", profile)
        refined = build_metrized_complex(f, split_bounded_edge(f, ("-1/2", "-1/2")))
        assert [e.length for e in refined.bounded_edges()] == [Fraction(1, 2), Fraction(1, 2)]
        assert refined.total_length() == build_metrized_complex(f).total_length()

    def test_refinement_must_be_rational(self):
        f = parse_poly("x + y + 1 + t*x*y")
        with pytest.raises(RationalityError):
            build_metrized_complex(f, split_bounded_edge(f, ("-1/2", "-1/2")))

    def test_trop_vertices_must_be_rational(self):
        with pytest.raises(RationalityError) as info:
            build_metrized_complex(parse_poly("x^2 + y^2 + t"))
        assert info.value.code == "not_gamma_rational"

    def test_finer_group_admits_half_vertex(self):
        f = parse_poly("x^2 + y^2 + t", FieldProfile.from_descriptor("Q", 2))
        mc = build_metrized_complex(f)
        assert mc.vertices == [QVector.of(Fraction(1, 2), Fraction(1, 2))]
        assert len(mc.legs()) == 3

    def test_needs_plane_curve(self):
        with pytest.raises(DimensionError):
            build_metrized_complex(parse_poly("x + 1"))

    def test_schon_edges(self):
        mc = build_metrized_complex(parse_poly("x + y + 1 + t*x*y"), schon=True)
        (edge,) = mc.bounded_edges()
        assert mc.edge_components(edge) == 2
        assert mc.edge_components(mc.legs()[0]) is None

    def test_graph(self):
        graph = build_metrized_complex(parse_poly("x + y + 1 + t*x*y")).graph()
        assert graph.number_of_nodes() == 2 + 4
        assert graph.number_of_edges() == 5


class TestFiberComponents:
    """Tests for fiber_components."""

    def test_linear(self):
        g = ResiduePolynomial(("x", "y"), {(1, 0): 1, (0, 1): 1, (0, 0): 1}, ResidueField(0))
        assert fiber_components(g) == 1

    def test_binomial_splitting(self):
        g = ResiduePolynomial(("x",), {(0,): -1, (2,): 1}, ResidueField(0))
        assert fiber_components(g) == 2

    def test_binomial_irreducible_over_q(self):
        g = ResiduePolynomial(("x",), {(0,): 1, (2,): 1}, ResidueField(0))
        assert fiber_components(g) == 1

    def test_binomial_splits_mod_5(self):
        g = ResiduePolynomial(("x",), {(0,): 1, (2,): 1}, ResidueField(5))
        assert fiber_components(g) == 2

    def test_product_of_linear_forms(self):
        g = ResiduePolynomial(
            ("x", "y"), {(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}, ResidueField(0)
        )
        assert fiber_components(g) == 2

    def test_unfactored(self):
        g = ResiduePolynomial(("x", "y"), {(2, 0): 1, (0, 2): 1, (0, 0): 1}, ResidueField(0))
        assert fiber_components(g) is None

    def test_unit(self):
        assert fiber_components(ResiduePolynomial(("x",), {(0,): 1}, ResidueField(0))) == 0


class TestAdicPointCount:
    """Tests for adic_point_count."""

    def test_tropical_line(self):
        rows = adic_point_count(tropical_line())
        assert len(rows) == 4
        by_fiber = {row.fiber.to_text(): row for row in rows}
        assert by_fiber["x + y + 1"].dim == 0
        assert by_fiber["x + y + 1"].components == 1
        assert by_fiber["x + 1"].dim == 1
        assert by_fiber["x + 1"].components == 1
        assert all(row.status == "factored" for row in rows)

    def test_monomial(self):
        assert adic_point_count(parse_poly("t*x*y")) == []

    def test_reducible_vertex_fiber(self):
        rows = adic_point_count(parse_poly("x*y + x + y + 1"))
        (vertex,) = [row for row in rows if row.dim == 0]
        assert vertex.components == 2
        assert vertex.status == "factored"

    def test_curve_with_bounded_edge(self):
        rows = adic_point_count(parse_poly("x + y + 1 + t*x*y"))
        vertices = [row for row in rows if row.dim == 0]
        assert sorted(row.status for row in vertices) == ["factored", "unfactored"]
        assert [row.components for row in vertices if row.status == "factored"] == [1]
        assert all(row.components == 1 for row in rows if row.dim == 1)

    def test_laurent_fiber(self):
        g = ResiduePolynomial(
            ("x", "y"), {(0, 0): 1, (-1, 0): 1, (0, -1): 1, (-1, -1): 1}, ResidueField(0)
        )
        assert fiber_components(g) == 2
