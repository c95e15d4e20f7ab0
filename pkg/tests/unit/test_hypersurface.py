"""
Unit tests for tropical values, initial forms and corner loci.
"""

from fractions import Fraction

import pytest

from adictrop.algebra.field import FieldProfile
from adictrop.algebra.parser import parse_poly
from adictrop.algebra.polynomial import LaurentPolynomial
from adictrop.core.exactnum import QVector
from adictrop.errors import DimensionError, RationalityError, ZeroPolynomialError
from adictrop.oracles import expected_line_rays, tropical_line
from adictrop.tropical.hypersurface import initial_form, tropicalize, trop_value


class TestTropValue:
    """Tests for trop_value."""

    def test_all_terms_tie_at_origin(self):
        assert trop_value(tropical_line(), (0, 0)) == 0

    def test_constant_wins(self):
        assert trop_value(tropical_line(), (2, 3)) == 0

    def test_uniformizer_power(self):
        f = parse_poly("t^2*x^-1 + 3")
        assert trop_value(f, (1,)) == 0
        assert trop_value(f, (3,)) == -1

    def test_rational_point(self):
        assert trop_value(tropical_line(), ("-1/2", "1/3")) == Fraction(-1, 2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            trop_value(tropical_line(), (0,))

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomialError) as info:
            trop_value(LaurentPolynomial(("x",), {}), (0,))
        assert info.value.code == "zero_polynomial"

    def test_zero_polynomial_initial_form(self):
        with pytest.raises(ZeroPolynomialError):
            initial_form(LaurentPolynomial(("x",), {}), (0,))


class TestInitialForm:
    """Tests for canonical initial forms."""

    def test_vertex_of_line(self):
        assert initial_form(tropical_line(), (0, 0)).to_text() == "x + y + 1"

    def test_on_vertical_ray(self):
        assert initial_form(tropical_line(), (0, 1)).to_text() == "x + 1"

    def test_on_horizontal_ray(self):
        assert initial_form(tropical_line(), (1, 0)).to_text() == "y + 1"

    def test_on_diagonal_ray(self):
        assert initial_form(tropical_line(), (-1, -1)).to_text() == "x + y"

    def test_off_the_hypersurface(self):
        assert len(initial_form(tropical_line(), (1, 1))) == 1

    def test_monomial_is_unit(self):
        g = initial_form(parse_poly("t*x^2*y"), (3, -1))
        assert g.to_text() == "1"

    def test_scaling_to_monic(self):
        g = initial_form(parse_poly("2*x + 4"), (0,))
        assert g.to_text() == "1/2*x + 1"

    def test_non_rational_point(self):
        with pytest.raises(RationalityError) as info:
            initial_form(tropical_line(), ("1/2", 0))
        assert info.value.code == "not_gamma_rational"

    def test_rational_point_in_finer_group(self):
        profile = FieldProfile.from_descriptor("Q", 2)
        g = initial_form(parse_poly("x + y + 1", profile), ("1/2", 0))
        assert g.to_text() == "y + 1"

    def test_residue_field_arithmetic(self):
        profile = FieldProfile.from_descriptor("F5")
        g = initial_form(parse_poly("2*x + 3", profile), (0,))
        assert g.to_text() == "4*x + 1"


class TestTropicalize:
    """Tests for tropicalize."""

    def test_tropical_line_rays(self):
        trop = tropicalize(tropical_line())
        assert set(trop.complex.maximal_cells) == set(expected_line_rays())
        assert trop.complex.vertices == [QVector.of(0, 0)]
        assert len(trop.complex) == 4

    def test_membership(self):
        trop = tropicalize(tropical_line())
        assert trop.contains((5, 0))
        assert trop.contains(("-3/2", "-3/2"))
        assert not trop.contains((1, 1))

    def test_one_variable_point(self):
        trop = tropicalize(parse_poly("x + t"))
        assert trop.complex.vertices == [QVector.of(1)]
        assert len(trop.complex) == 1

    def test_translated_line(self):
        trop = tropicalize(parse_poly("x + y + t"))
        assert trop.complex.vertices == [QVector.of(1, 1)]

    def test_monomial_is_empty(self):
        trop = tropicalize(parse_poly("t*x*y"))
        assert trop.is_empty()
        assert not trop.contains((0, 0))

    def test_dual_cells(self):
        trop = tropicalize(tropical_line())
        vertex = trop.complex.vertex_index((0, 0))
        assert set(trop.dual_cells[vertex]) == {(0, 0), (1, 0), (0, 1)}
        assert trop.dual_face(vertex).dim == 2
        for i in trop.complex.indices_of_dim(1):
            assert trop.dual_face(i).dim == 1
            assert trop.dual_lattice_length(i) == 1

    def test_balancing_of_line(self):
        trop = tropicalize(tropical_line())
        assert trop.balancing_defect(trop.complex.vertex_index((0, 0))) == (0, 0)

    def test_weight_from_dual_edge(self):
        trop = tropicalize(parse_poly("x^2 + 1"))
        (point,) = trop.complex.indices_of_dim(0)
        assert trop.dual_lattice_length(point) == 2

    def test_bounded_edge(self):
        trop = tropicalize(parse_poly("x + y + 1 + t*x*y"))
        assert trop.complex.vertices == [QVector.of(-1, -1), QVector.of(0, 0)]
        bounded = [c for c in trop.complex.cells_of_dim(1) if c.is_bounded()]
        assert len(bounded) == 1
        for v in ((-1, -1), (0, 0)):
            assert trop.balancing_defect(trop.complex.vertex_index(v)) == (0, 0)

    def test_subdivision_faces(self):
        trop = tropicalize(parse_poly("x + y + 1 + t*x*y"))
        triangles = [terms for terms in trop.subdivision if len(terms) == 3]
        assert len(triangles) == 2

    def test_balancing_needs_vertex(self):
        trop = tropicalize(tropical_line())
        edge = trop.complex.indices_of_dim(1)[0]
        with pytest.raises(DimensionError):
            trop.balancing_defect(edge)
