"""Property-based tests for tropical hypersurfaces and initial forms.

Polynomials are drawn in two variables over Q with value group (1/6)Z, the
same family the built-in oracle suites sample from.
"""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from adictrop.algebra.polynomial import LaurentPolynomial, ValuedCoefficient
from adictrop.core.exactnum import QVector, is_gamma_rational, pairing
from adictrop.oracles import RESIDUES, SAMPLE_GAMMA, VALUATIONS, sample_profile
from adictrop.tropical.hypersurface import initial_form, trop_value, tropicalize

exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
coefficients = st.builds(
    ValuedCoefficient,
    st.sampled_from(VALUATIONS).map(Fraction),
    st.sampled_from(RESIDUES),
)


@st.composite
def polynomials(draw, min_terms: int = 1):
    terms = draw(st.dictionaries(exponents, coefficients, min_size=min_terms, max_size=6))
    return LaurentPolynomial(("x", "y"), terms, sample_profile())


grid = st.integers(-3 * SAMPLE_GAMMA, 3 * SAMPLE_GAMMA).map(lambda k: Fraction(k, SAMPLE_GAMMA))
points = st.tuples(grid, grid).map(QVector)
shifts = st.tuples(st.integers(-2, 2), st.integers(-2, 2))


class TestFundamentalCorrespondence:
    """Membership in Trop(f) agrees with initial forms having two or more terms."""

    @given(f=polynomials(), v=points)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_random_points(self, f, v):
        trop = tropicalize(f)
        assert (len(initial_form(f, v)) >= 2) == trop.contains(v)

    @given(f=polynomials(min_terms=2))
    @settings(max_examples=50, suppress_health_check=[HealthCheck.too_slow])
    def test_vertices_are_members(self, f):
        trop = tropicalize(f)
        group = f.profile.value_group
        for i in trop.complex.indices_of_dim(0):
            v = trop.complex.cells[i].vertices[0]
            if is_gamma_rational(v, group):
                assert len(initial_form(f, v)) >= 3

    @given(f=polynomials(min_terms=2))
    @settings(max_examples=50, suppress_health_check=[HealthCheck.too_slow])
    def test_barycenters_are_members(self, f):
        trop = tropicalize(f)
        group = f.profile.value_group
        for cell in trop.complex.cells:
            v = cell.barycenter()
            if is_gamma_rational(v, group):
                assert len(initial_form(f, v)) >= 2


class TestMonomialShift:
    """Multiplying by chi^w translates trop values and keeps initial supports."""

    @given(f=polynomials(), v=points, w=shifts)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_trop_value_shifts(self, f, v, w):
        g = f.multiply_by_monomial(w)
        assert trop_value(g, v) == trop_value(f, v) + pairing(w, v)

    @given(f=polynomials(), v=points, w=shifts)
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_initial_terms_shift(self, f, v, w):
        before = initial_form(f, v)
        after = initial_form(f.multiply_by_monomial(w), v)
        assert len(after) == len(before)
        assert tropicalize(f.multiply_by_monomial(w)).contains(v) == tropicalize(f).contains(v)


class TestDualityAndBalancing:
    """Cells and their dual faces have complementary dimensions; vertices balance."""

    @given(f=polynomials())
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_dimensions_complementary(self, f):
        trop = tropicalize(f)
        for i, cell in enumerate(trop.complex.cells):
            assert cell.dim + trop.dual_face(i).dim == f.n

    @given(f=polynomials())
    @settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
    def test_vertices_balanced(self, f):
        trop = tropicalize(f)
        for i in trop.complex.indices_of_dim(0):
            assert not any(trop.balancing_defect(i))

    @given(e=exponents, c=coefficients)
    @settings(max_examples=100)
    def test_monomials_have_empty_tropicalization(self, e, c):
        f = LaurentPolynomial(("x", "y"), {e: c}, sample_profile())
        assert tropicalize(f).is_empty()
