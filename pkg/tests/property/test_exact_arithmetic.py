"""Property-based tests for exact rationals, value groups and the pairing."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from adictrop.core.exactnum import (
    ValueGroup,
    format_rat,
    integral_direction,
    pairing,
    parse_rat,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=24)
integers = st.integers(min_value=-6, max_value=6)
denominators = st.integers(min_value=1, max_value=30)


class TestRationalText:
    """Properties of the rational literal format."""

    @given(q=rationals)
    @settings(max_examples=100)
    def test_format_is_lowest_terms(self, q: Fraction):
        text = format_rat(q)
        assert parse_rat(text) == q
        if q.denominator == 1:
            assert "/" not in text


class TestPairing:
    """Bilinearity of <u, v>."""

    @given(
        u=st.lists(integers, min_size=3, max_size=3),
        v=st.lists(rationals, min_size=3, max_size=3),
        w=st.lists(rationals, min_size=3, max_size=3),
    )
    @settings(max_examples=100)
    def test_additive_in_v(self, u, v, w):
        total = [a + b for a, b in zip(v, w)]
        assert pairing(u, total) == pairing(u, v) + pairing(u, w)

    @given(
        u=st.lists(integers, min_size=2, max_size=2),
        u2=st.lists(integers, min_size=2, max_size=2),
        v=st.lists(rationals, min_size=2, max_size=2),
        k=integers,
    )
    @settings(max_examples=100)
    def test_linear_in_u(self, u, u2, v, k):
        combined = [k * a + b for a, b in zip(u, u2)]
        assert pairing(combined, v) == k * pairing(u, v) + pairing(u2, v)


class TestValueGroups:
    """Properties of (1/d)Z."""

    @given(points=st.lists(rationals, min_size=1, max_size=6))
    @settings(max_examples=100)
    def test_generated_group_is_smallest(self, points):
        group = ValueGroup.generated_by(points)
        assert all(group.contains(x) for x in points)
        for d in range(1, group.denominator):
            if group.denominator % d == 0:
                assert not all(ValueGroup(d).contains(x) for x in points)

    @given(a=denominators, b=denominators)
    @settings(max_examples=100)
    def test_join_contains_both(self, a, b):
        joined = ValueGroup(a).join(ValueGroup(b))
        assert joined.contains(Fraction(1, a))
        assert joined.contains(Fraction(1, b))
        assert joined.denominator <= a * b


class TestIntegralDirection:
    """Primitive integral directions of rational vectors."""

    @given(v=st.lists(rationals, min_size=1, max_size=4))
    @settings(max_examples=100, suppress_health_check=[HealthCheck.filter_too_much])
    def test_positive_multiple(self, v):
        assume(any(x != 0 for x in v))
        direction = integral_direction(v)
        nonzero = next(i for i, x in enumerate(v) if x != 0)
        scale = Fraction(direction[nonzero]) / v[nonzero]
        assert scale > 0
        assert all(Fraction(d) == scale * x for d, x in zip(direction, v))
