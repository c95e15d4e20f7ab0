"""
Unit tests for polyhedral complexes, fans and Gubler fans.
"""

from fractions import Fraction

import networkx as nx
import pytest

from adictrop.core.exactnum import QVector, ValueGroup
from adictrop.errors import ComplexInvalidError, NotCompleteError, RefinementError
from adictrop.oracles import interval_complex, p2_degeneration_complex, planar_fan
from adictrop.polyhedra.complexes import (
    Fan,
    PolyhedralComplex,
    common_refinement,
    fan_over_cells,
    fan_over_complex,
    height_one_complex,
    minimal_cone_containing,
    recession_fan,
    refines,
    restrict_complex,
    star_fan,
)
from adictrop.polyhedra.cone import Cone
from adictrop.polyhedra.polyhedron import Polyhedron, cone_over


def split_line(*points: int) -> PolyhedralComplex:
    """Decomposition of R with vertices at the given increasing integers."""
    cells = [Polyhedron.from_points([(points[0],)], rays=[(-1,)])]
    cells += [Polyhedron.from_points([(a,), (b,)]) for a, b in zip(points, points[1:])]
    cells.append(Polyhedron.from_points([(points[-1],)], rays=[(1,)]))
    return PolyhedralComplex(cells, ambient_dim=1)


def quadrants_at(a: int, b: int) -> PolyhedralComplex:
    """The four closed quadrants around (a, b)."""
    axes = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    cells = [
        Polyhedron.from_points([(a, b)], rays=[axes[i], axes[(i + 1) % 4]]) for i in range(4)
    ]
    return PolyhedralComplex(cells, ambient_dim=2)


def tripod() -> PolyhedralComplex:
    """Three sectors around (1, 0) whose wall along (-2, 1) crosses x = 0 at y = 1/2."""
    rays = [(1, 0), (-2, 1), (0, -1)]
    cells = [
        Polyhedron.from_points([(1, 0)], rays=[rays[i], rays[(i + 1) % 3]]) for i in range(3)
    ]
    return PolyhedralComplex(cells, ambient_dim=2)


class TestPolyhedralComplex:
    """Tests for PolyhedralComplex."""

    def setup_method(self):
        """Set up test fixtures."""
        self.complex = interval_complex()

    def test_face_closure(self):
        assert len(self.complex) == 5
        assert self.complex.vertices == [QVector.of(0), QVector.of(1)]
        assert len(self.complex.maximal_cells) == 3

    def test_face_poset(self):
        zero = self.complex.vertex_index((0,))
        assert len(self.complex.cofaces_of(zero)) == 3
        assert nx.is_directed_acyclic_graph(self.complex.poset)

    def test_complete(self):
        assert self.complex.is_complete()

    def test_bounded_piece_not_complete(self):
        piece = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        assert not piece.is_complete()

    def test_relative_interior_lookup(self):
        index = self.complex.cell_containing_in_relative_interior((Fraction(1, 2),))
        assert self.complex.cells[index] == Polyhedron.from_points([(0,), (1,)])
        vertex = self.complex.cell_containing_in_relative_interior((1,))
        assert self.complex.cells[vertex].dim == 0

    def test_overlapping_cells_rejected(self):
        with pytest.raises(ComplexInvalidError) as info:
            PolyhedralComplex(
                [Polyhedron.from_points([(0,), (2,)]), Polyhedron.from_points([(1,), (3,)])]
            )
        assert info.value.code == "complex_invalid"

    def test_unknown_vertex(self):
        with pytest.raises(ComplexInvalidError):
            self.complex.vertex_index((Fraction(1, 2),))

    def test_deterministic_order(self):
        shuffled = PolyhedralComplex(list(reversed(self.complex.maximal_cells)))
        assert shuffled == self.complex


class TestFan:
    """Tests for Fan smoothness and completeness."""

    def test_p2_fan(self):
        fan = planar_fan([(1, 0), (0, 1), (-1, -1)])
        assert fan.is_complete()
        assert fan.is_smooth()
        assert fan.rays == [(-1, -1), (0, 1), (1, 0)]

    def test_non_smooth_cone(self):
        fan = Fan([Cone.from_generators([(1, 0), (1, 2)])])
        assert not fan.is_smooth()

    def test_incomplete(self):
        fan = Fan([Cone.from_generators([(1, 0), (0, 1)])])
        assert not fan.is_complete()


class TestGublerFan:
    """Tests for fans over complexes and their slices."""

    def setup_method(self):
        """Set up test fixtures."""
        self.fan = fan_over_complex(interval_complex())

    def test_three_charts(self):
        assert len(self.fan.maximal_cells) == 3
        assert all(c.dim == 2 for c in self.fan.maximal_cells)
        assert self.fan.support_full

    def test_recession_is_p1_fan(self):
        rec = recession_fan(self.fan)
        assert rec.rays == [(-1,), (1,)]
        assert rec.is_complete()

    def test_height_one_recovers_complex(self):
        assert height_one_complex(self.fan) == interval_complex()

    def test_cone_over_fan_of_itself(self):
        fan = fan_over_complex(split_line(0))
        assert height_one_complex(fan).vertices == [QVector.of(0)]
        assert recession_fan(fan).rays == [(-1,), (1,)]

    def test_incomplete_complex(self):
        piece = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        with pytest.raises(NotCompleteError) as info:
            fan_over_complex(piece)
        assert info.value.code == "not_complete"

    def test_partial_fan(self):
        piece = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        fan = fan_over_cells(piece, ValueGroup(1))
        assert not fan.support_full

    def test_p2_recession(self):
        fan = fan_over_complex(p2_degeneration_complex())
        assert recession_fan(fan).rays == [(-1, 0), (0, -1), (1, 1)]
        assert len(height_one_complex(fan).vertices) == 4

    def test_minimal_cone(self):
        index = minimal_cone_containing(self.fan, (Fraction(1, 2),))
        assert self.fan.cells[index] == cone_over(Polyhedron.from_points([(0,), (1,)]))
        vertex = minimal_cone_containing(self.fan, (0,))
        assert self.fan.cells[vertex].dim == 1


class TestStarFan:
    """Tests for star_fan."""

    def test_interval_vertex(self):
        star = star_fan(interval_complex(), (0,))
        assert star.rays == [(-1,), (1,)]
        assert star.is_complete()

    def test_p2_vertex(self):
        star = star_fan(p2_degeneration_complex(), (1, 1))
        assert star.rays == [(-1, 0), (0, -1), (1, 1)]
        assert star.is_smooth()

    def test_boundary_vertex_incomplete(self):
        piece = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        assert not star_fan(piece, (0,)).is_complete()


class TestRefinement:
    """Tests for refines and common_refinement."""

    def test_reflexive(self):
        fan = fan_over_complex(interval_complex())
        result = refines(fan, fan)
        assert result.refines
        assert all(i == j for i, j in result.cell_map.items())

    def test_split_interval(self):
        half = ValueGroup(2)
        coarse = fan_over_cells(PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])]), half)
        fine = fan_over_cells(
            PolyhedralComplex(
                [
                    Polyhedron.from_points([(0,), ("1/2",)]),
                    Polyhedron.from_points([("1/2",), (1,)]),
                ]
            ),
            half,
        )
        result = refines(fine, coarse)
        assert result
        whole = coarse.index_of(cone_over(Polyhedron.from_points([(0,), (1,)])))
        for i in fine.maximal_indices():
            assert result.cell_map[i] == whole
        assert not refines(coarse, fine)

    def test_shifted_decompositions_incomparable(self):
        first = fan_over_complex(split_line(0))
        second = fan_over_complex(split_line(1))
        assert not refines(first, second)
        assert not refines(second, first)

    def test_common_refinement_overlays_vertices(self):
        overlay = common_refinement(fan_over_complex(split_line(0)), fan_over_complex(split_line(1)))
        assert height_one_complex(overlay).vertices == [QVector.of(0), QVector.of(1)]
        assert refines(overlay, fan_over_complex(split_line(0)))
        assert refines(overlay, fan_over_complex(split_line(1)))

    def test_common_refinement_idempotent(self):
        fan = fan_over_complex(interval_complex())
        assert common_refinement(fan, fan).maximal_cells == fan.maximal_cells

    def test_shifted_grids_incomparable(self):
        first = fan_over_complex(quadrants_at(0, 0))
        second = fan_over_complex(quadrants_at(1, 1))
        assert not refines(first, second)
        assert not refines(second, first)

    def test_plane_overlay_matches_pairwise_intersections(self):
        first = fan_over_complex(quadrants_at(0, 0))
        second = fan_over_complex(quadrants_at(1, 1))
        overlay = common_refinement(first, second)
        full = {
            a.intersection(b)
            for a in first.maximal_cells
            for b in second.maximal_cells
            if a.intersection(b).dim == 3
        }
        assert set(overlay.maximal_cells) == full
        assert len(overlay.maximal_cells) <= len(first.maximal_cells) * len(second.maximal_cells)
        assert refines(overlay, first)
        assert refines(overlay, second)
        assert overlay.value_group == ValueGroup(1)

    def test_walls_crossing_off_the_lattice(self):
        first = fan_over_complex(quadrants_at(0, 0))
        second = fan_over_complex(tripod())
        overlay = common_refinement(first, second)
        assert overlay.value_group == ValueGroup(2)
        assert overlay.support_full
        assert QVector.of(0, Fraction(1, 2)) in height_one_complex(overlay).vertices
        assert refines(overlay, first)
        assert refines(overlay, second)


class TestRestrictComplex:
    """Tests for restrict_complex."""

    def setup_method(self):
        """Set up test fixtures."""
        self.base = PolyhedralComplex([Polyhedron.from_points([(-1,), (2,)])])

    def test_cuts_base_at_vertices(self):
        restricted = restrict_complex(split_line(0, 1), self.base)
        assert len(restricted.cells_of_dim(1)) == 3
        assert len(restricted.cells_of_dim(0)) == 4
        assert restricted.support_contains((Fraction(3, 2),))
        assert not restricted.support_contains((3,))

    def test_gap_rejected(self):
        piece = PolyhedralComplex([Polyhedron.from_points([(0,), (1,)])])
        with pytest.raises(RefinementError):
            restrict_complex(piece, self.base)
