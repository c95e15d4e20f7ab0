"""
Unit tests for tilted semigroups, chart presentations and the box oracle.
"""

from fractions import Fraction

import pytest

from adictrop.core.exactnum import ValueGroup
from adictrop.errors import AdmissibilityError, ConfigError, DimensionError
from adictrop.oracles import EXPECTED_CHART_GENERATORS, interval_charts
from adictrop.polyhedra.polyhedron import AdmissibleCone, ray_over_point
from adictrop.tilted.semigroup import (
    SemigroupElement,
    algebra_generators,
    binomial_relations,
    box_radius,
    face_semigroups,
    generator_names,
    render_generators,
    tilted_semigroup,
    verify_hilbert_basis,
)

Z = ValueGroup(1)


def basis_pairs(semigroup):
    return {(h.u, h.n) for h in semigroup.hilbert_basis}


class TestIntervalCharts:
    """Tests for the three charts of the model of P1 over Z_p."""

    def setup_method(self):
        """Set up test fixtures."""
        self.charts = {name: tilted_semigroup(cone, Z) for name, cone in interval_charts().items()}

    def test_middle_basis(self):
        assert basis_pairs(self.charts["middle"]) == {((1,), 0), ((-1,), 1)}

    def test_left_basis(self):
        assert basis_pairs(self.charts["left"]) == {((-1,), 0), ((0,), 1)}

    def test_right_basis(self):
        assert basis_pairs(self.charts["right"]) == {((1,), -1), ((0,), 1)}

    @pytest.mark.parametrize("name", ["left", "middle", "right"])
    def test_algebra_generators(self, name):
        rendered = render_generators(self.charts[name], ("t",), "p")
        assert set(rendered) == EXPECTED_CHART_GENERATORS[name]

    def test_constants_absorbed(self):
        assert all(not g.is_constant() for g in algebra_generators(self.charts["left"]))
        assert len(algebra_generators(self.charts["left"])) == 1

    def test_middle_relation(self):
        semigroup = self.charts["middle"]
        names = generator_names(semigroup, "p")
        assert names == ["x", "y", "p"]
        relations = binomial_relations(semigroup, 2)
        assert [r.render(names) for r in relations] == ["x*y = p"]

    def test_free_chart_has_no_relations(self):
        assert binomial_relations(self.charts["left"], 2) == []

    def test_degree_bound(self):
        with pytest.raises(ConfigError) as info:
            binomial_relations(self.charts["middle"], 1)
        assert info.value.code == "config_invalid"

    def test_membership(self):
        semigroup = self.charts["middle"]
        assert semigroup.contains(SemigroupElement((2,), Fraction(0)))
        assert semigroup.contains(SemigroupElement((-3,), Fraction(5)))
        assert not semigroup.contains(SemigroupElement((-1,), Fraction(0)))
        assert not semigroup.contains(SemigroupElement((0,), Fraction(1, 2)))

    def test_membership_dimension(self):
        with pytest.raises(DimensionError):
            self.charts["middle"].contains(SemigroupElement((0, 0), Fraction(0)))

    def test_decomposition(self):
        semigroup = self.charts["middle"]
        assert semigroup.decomposes(SemigroupElement((-3,), Fraction(5)))
        assert not semigroup.decomposes(SemigroupElement((-1,), Fraction(0)))

    @pytest.mark.parametrize("name", ["left", "middle", "right"])
    def test_box_oracle(self, name):
        report = verify_hilbert_basis(self.charts[name])
        assert report.passed
        assert report.points_checked > 0

    def test_face_semigroups(self):
        faces = face_semigroups(self.charts["middle"])
        assert len(faces) == 3
        for face, semigroup in faces:
            assert semigroup.cone == face


class TestOtherCones:
    """Tests for units, finer value groups and admissibility."""

    def test_upper_halfspace_only_constants(self):
        cone = AdmissibleCone.from_generators([(0, 1)], lineality=[(1, 0)], ambient_dim=1)
        semigroup = tilted_semigroup(cone, Z)
        assert algebra_generators(semigroup) == []
        assert semigroup.units == ()

    def test_ray_over_origin_has_units(self):
        semigroup = tilted_semigroup(ray_over_point((0,)), Z)
        assert len(semigroup.units) == 1
        assert semigroup.units[0].n == 0
        assert abs(semigroup.units[0].u[0]) == 1

    def test_finer_value_group(self):
        cone = interval_charts()["middle"]
        semigroup = tilted_semigroup(cone, ValueGroup(2))
        assert ((0,), Fraction(1, 2)) in basis_pairs(semigroup)
        assert len(algebra_generators(semigroup)) == 2
        assert semigroup.rescale == 2
        assert verify_hilbert_basis(semigroup).passed

    def test_not_admissible(self):
        with pytest.raises(AdmissibilityError):
            tilted_semigroup(ray_over_point(("1/2",)), Z)

    def test_planar_chart(self):
        cone = AdmissibleCone.from_generators([(0, 0, 1), (1, 0, 1), (0, 1, 1)])
        semigroup = tilted_semigroup(cone, Z)
        assert verify_hilbert_basis(semigroup).passed
        assert box_radius(semigroup) > 0

    def test_default_variable_names(self):
        semigroup = tilted_semigroup(interval_charts()["middle"], Z)
        assert set(render_generators(semigroup)) == {"x", "t*x^-1"}


class TestUnitSquareChart:
    """Tests for the chart of the cone over the unit square."""

    def setup_method(self):
        """Set up test fixtures."""
        cone = AdmissibleCone.from_generators([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        self.semigroup = tilted_semigroup(cone, Z)
        self.relations = binomial_relations(self.semigroup, 2)

    def test_four_generators(self):
        assert basis_pairs(self.semigroup) == {
            ((1, 0), 0),
            ((0, 1), 0),
            ((-1, 0), 1),
            ((0, -1), 1),
        }

    def test_one_relation_among_corners(self):
        uniformizer = len(self.semigroup.hilbert_basis)
        (corners,) = [r for r in self.relations if uniformizer not in r.left + r.right]
        assert len(corners.left) == len(corners.right) == 2
        basis = self.semigroup.hilbert_basis
        for side in (corners.left, corners.right):
            assert tuple(sum(basis[i].u[j] for i in side) for j in range(2)) == (0, 0)
            assert sum(basis[i].n for i in side) == 1

    def test_uniformizer_expressed_once(self):
        uniformizer = len(self.semigroup.hilbert_basis)
        assert len(self.relations) == 2
        assert [r.right for r in self.relations if uniformizer in r.right] == [(uniformizer,)]
