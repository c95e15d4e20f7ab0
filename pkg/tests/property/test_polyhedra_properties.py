"""Property-based tests for polyhedra, admissible cones and tilted semigroups."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from adictrop.core.exactnum import QVector, ValueGroup
from adictrop.polyhedra.polyhedron import AdmissibleCone, Polyhedron
from adictrop.tilted.semigroup import tilted_semigroup, verify_hilbert_basis

coordinates = st.fractions(min_value=-4, max_value=4, max_denominator=4)
planar_points = st.lists(st.tuples(coordinates, coordinates), min_size=1, max_size=6, unique=True)
small = st.integers(-2, 2)


@st.composite
def extended_generators(draw, n: int):
    """1 to n + 2 nonzero vectors (v, c) with c >= 0."""
    gens = draw(
        st.lists(
            st.tuples(*([small] * n), st.integers(0, 2)).filter(any),
            min_size=1,
            max_size=n + 2,
        )
    )
    return AdmissibleCone.from_generators(gens, ambient_dim=n)


class TestPolyhedronDescriptions:
    """Points/rays and halfspaces describe the same polyhedron."""

    @given(pts=planar_points)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_hull_contains_its_points(self, pts):
        hull = Polyhedron.from_points(pts)
        assert all(hull.contains(p) for p in pts)
        assert set(hull.vertices) <= {QVector(p) for p in pts}

    @given(pts=planar_points, rays=st.lists(st.tuples(small, small).filter(any), max_size=2))
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_halfspaces_rebuild_the_polyhedron(self, pts, rays):
        cell = Polyhedron.from_points(pts, rays)
        rebuilt = Polyhedron.from_halfspaces(cell.halfspaces, cell.equalities, ambient_dim=2)
        assert rebuilt == cell

    @given(pts=planar_points)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_barycenter_in_relative_interior(self, pts):
        cell = Polyhedron.from_points(pts)
        assert cell.contains_in_relative_interior(cell.barycenter())

    @given(pts=planar_points)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_faces_are_faces(self, pts):
        cell = Polyhedron.from_points(pts)
        for face in cell.faces():
            assert face.is_face_of(cell)
            assert face.dim <= cell.dim


class TestTiltedSemigroups:
    """The computed Hilbert basis survives the box check."""

    @given(cone=extended_generators(1), d=st.sampled_from([1, 2, 3]))
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_rank_one_box_oracle(self, cone, d):
        group = ValueGroup(d)
        assume(cone.is_admissible(group))
        assert verify_hilbert_basis(tilted_semigroup(cone, group)).passed

    @given(cone=extended_generators(2), d=st.sampled_from([1, 2]))
    @settings(max_examples=50, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
    def test_rank_two_box_oracle(self, cone, d):
        group = ValueGroup(d)
        assume(cone.is_admissible(group))
        assert verify_hilbert_basis(tilted_semigroup(cone, group)).passed

    @given(cone=extended_generators(2))
    @settings(max_examples=50, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
    def test_basis_elements_belong(self, cone):
        group = ValueGroup(1)
        assume(cone.is_admissible(group))
        semigroup = tilted_semigroup(cone, group)
        assert all(semigroup.contains(h) for h in semigroup.hilbert_basis)
        assert all(semigroup.contains(h) for h in semigroup.units)
