import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slrsim.coords import UsableAddress, Viewport
from slrsim import routing
from slrsim.routing import (
    RouteSpec,
    corona_should_retransmit,
    delta_a,
    delta_b,
    on_line,
    on_segment,
    should_retransmit,
)

VP = Viewport(1, 2, 5)


def spec_for(ua1, ua2, m=1):
    return RouteSpec(VP, UsableAddress(*ua1), UsableAddress(*ua2), m)


def oracle_retransmit(ua, ua1, ua2, m):
    """Independent transliteration of the two conditions.

    Evaluates the cross terms from scratch at every shifted coordinate
    (no reuse of the production delta helpers beyond plain arithmetic).
    """
    r, rr, rrr = ua
    r1, rr1, rrr1 = ua1
    r2, rr2, rrr2 = ua2

    seg = (
        (r - r2) * (r - r1) <= 0
        and (rr - rr2) * (rr - rr1) <= 0
        and (rrr - rrr2) * (rrr - rrr1) <= 0
    )
    if not seg:
        return False

    def da(x, y):
        return (x - r1) * (rr2 - rr1) - (y - rr1) * (r2 - r1)

    def db(x, z):
        return (x - r1) * (rrr2 - rrr1) - (z - rrr1) * (r2 - r1)

    a0 = da(r, rr)
    cond_a = (
        a0 * da(r - m, rr) <= 0
        or a0 * da(r, rr - m) <= 0
        or a0 * da(r - m, rr - m) <= 0
    )
    b0 = db(r, rrr)
    cond_b = (
        b0 * db(r - m, rrr) <= 0
        or b0 * db(r, rrr - m) <= 0
        or b0 * db(r - m, rrr - m) <= 0
    )
    return cond_a and cond_b


ua_ints = st.integers(min_value=0, max_value=30)
ua_triples = st.tuples(ua_ints, ua_ints, ua_ints)


class TestDeltas:
    def test_zero_at_first_endpoint(self):
        ua1 = UsableAddress(0, 4, 0)
        assert delta_a(ua1, ua1, UsableAddress(4, 0, 0)) == 0

    def test_symmetric_midpoint_on_line(self):
        assert delta_a(UsableAddress(2, 2, 0), UsableAddress(0, 4, 0),
                       UsableAddress(4, 0, 0)) == 0

    def test_hand_computed_inner_point(self):
        # (1-0)(0-4) - (1-4)(4-0) = -4 + 12 = 8
        assert delta_a(UsableAddress(1, 1, 0), UsableAddress(0, 4, 0),
                       UsableAddress(4, 0, 0)) == 8

    def test_delta_b_zero_at_both_endpoints(self):
        ua1, ua2 = UsableAddress(0, 0, 4), UsableAddress(4, 0, 0)
        assert delta_b(ua1, ua1, ua2) == 0
        assert delta_b(ua2, ua1, ua2) == 0

    def test_delta_b_hand_computed(self):
        assert delta_b(UsableAddress(1, 0, 1), UsableAddress(0, 0, 4),
                       UsableAddress(4, 0, 0)) == 8


class TestOnLine:
    def test_endpoints_always_on_line(self):
        for m in (1, 2, 5):
            spec = spec_for((0, 4, 4), (4, 0, 4), m)
            assert on_line(UsableAddress(0, 4, 4), spec)
            assert on_line(UsableAddress(4, 0, 4), spec)

    def test_far_point_off_line(self):
        spec = spec_for((0, 4, 4), (4, 0, 4), 1)
        assert not on_line(UsableAddress(10, 10, 10), spec)


class TestOnSegment:
    def test_first_endpoint(self):
        spec = spec_for((0, 4, 4), (4, 0, 4))
        assert on_segment(UsableAddress(0, 4, 4), spec)

    def test_outside_interval(self):
        spec = spec_for((0, 2, 2), (4, 3, 3))
        assert not on_segment(UsableAddress(5, 2, 2), spec)

    def test_strictly_inside(self):
        spec = spec_for((0, 0, 0), (4, 4, 4))
        assert on_segment(UsableAddress(2, 1, 3), spec)


class TestShouldRetransmit:
    def test_sender_address_retransmits(self):
        spec = spec_for((2, 3, 4), (5, 1, 0), 1)
        assert should_retransmit(UsableAddress(2, 3, 4), spec)
        assert should_retransmit(UsableAddress(5, 1, 0), spec)

    def test_segment_check_short_circuits(self, monkeypatch):
        spec = spec_for((0, 0, 0), (2, 2, 2))

        def boom(*args):
            raise AssertionError("on_line evaluated for an out-of-segment node")

        monkeypatch.setattr(routing, "on_line", boom)
        assert not routing.should_retransmit(UsableAddress(9, 9, 9), spec)

    def test_exhaustive_member_set_matches_oracle(self):
        zones = list(itertools.product(range(7), repeat=3))
        cases = [
            ((0, 4, 4), (4, 0, 4), 1),
            ((0, 4, 4), (4, 0, 4), 2),
            ((1, 2, 3), (6, 5, 0), 1),
            ((6, 6, 6), (0, 0, 0), 3),
            ((2, 2, 2), (2, 2, 2), 1),
            ((0, 6, 2), (6, 0, 2), 2),
        ]
        for ua1, ua2, m in cases:
            spec = spec_for(ua1, ua2, m)
            got = {z for z in zones if should_retransmit(UsableAddress(*z), spec)}
            want = {z for z in zones if oracle_retransmit(z, ua1, ua2, m)}
            assert got == want

    def test_degenerate_pair_matches_only_itself(self):
        spec = spec_for((3, 3, 3), (3, 3, 3), 1)
        members = [
            z for z in itertools.product(range(7), repeat=3)
            if should_retransmit(UsableAddress(*z), spec)
        ]
        assert members == [(3, 3, 3)]

    def test_hop_bound_enforced(self):
        spec = spec_for((0, 0, 0), (4, 4, 4))
        with pytest.raises(ValueError):
            should_retransmit(UsableAddress(2**15, 0, 0), spec)
        with pytest.raises(ValueError):
            spec_for((2**15, 0, 0), (1, 1, 1))

    def test_route_spec_rejects_zero_width(self):
        with pytest.raises(ValueError):
            spec_for((0, 0, 0), (1, 1, 1), 0)


class TestCorona:
    def test_endpoint_inside_own_box(self):
        spec = spec_for((1, 5, 2), (4, 0, 7))
        assert corona_should_retransmit(UsableAddress(1, 5, 2), spec)

    def test_equivalent_to_segment_box(self):
        spec = spec_for((1, 5, 2), (4, 0, 7))
        for z in itertools.product(range(8), repeat=3):
            ua = UsableAddress(*z)
            assert corona_should_retransmit(ua, spec) == on_segment(ua, spec)

    def test_count_dominates_slr_at_m1(self):
        spec = spec_for((0, 4, 4), (4, 0, 4), 1)
        zones = [UsableAddress(*z) for z in itertools.product(range(7), repeat=3)]
        slr = sum(1 for z in zones if should_retransmit(z, spec))
        corona = sum(1 for z in zones if corona_should_retransmit(z, spec))
        assert corona >= slr


class TestProperties:
    @given(ua=ua_triples, ua1=ua_triples, ua2=ua_triples, m=st.integers(1, 5))
    @settings(max_examples=300)
    def test_endpoints_and_swap_symmetry(self, ua, ua1, ua2, m):
        spec = RouteSpec(VP, UsableAddress(*ua1), UsableAddress(*ua2), m)
        swapped = RouteSpec(VP, UsableAddress(*ua2), UsableAddress(*ua1), m)
        assert should_retransmit(UsableAddress(*ua1), spec)
        assert should_retransmit(UsableAddress(*ua2), spec)
        probe = UsableAddress(*ua)
        assert should_retransmit(probe, spec) == should_retransmit(probe, swapped)

    @given(ua=ua_triples, ua1=ua_triples, ua2=ua_triples, m=st.integers(1, 5))
    @settings(max_examples=300)
    def test_width_monotone_and_corona_superset(self, ua, ua1, ua2, m):
        probe = UsableAddress(*ua)
        spec = RouteSpec(VP, UsableAddress(*ua1), UsableAddress(*ua2), m)
        wider = RouteSpec(VP, spec.ua1, spec.ua2, m + 1)
        if on_line(probe, spec):
            assert on_line(probe, wider)
        if should_retransmit(probe, spec):
            assert corona_should_retransmit(probe, spec)


class GuardedInt(int):
    """Integer that refuses any operation that could produce a float."""

    def _no_float(self, *args):
        raise AssertionError("floating-point operation reached routing math")

    __truediv__ = __rtruediv__ = __float__ = _no_float


def test_integer_purity():
    g = lambda *vals: UsableAddress(*(GuardedInt(v) for v in vals))
    spec = RouteSpec(VP, g(0, 4, 4), g(4, 0, 4), GuardedInt(2))
    for probe in (g(2, 2, 4), g(10, 10, 10), g(0, 4, 4)):
        should_retransmit(probe, spec)
        corona_should_retransmit(probe, spec)
        delta_a(probe, spec.ua1, spec.ua2)
        delta_b(probe, spec.ua1, spec.ua2)
