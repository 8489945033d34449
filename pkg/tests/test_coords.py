import math
import random
from collections import deque

import numpy as np
import pytest

from slrsim.coords import (
    CartesianPos,
    HopAddress,
    InfeasibleAddressError,
    SpaceDims,
    UsableAddress,
    Viewport,
    anchor_position,
    cartesian_to_curvilinear,
    curvilinear_to_cartesian,
    enumerate_viewports,
    ideal_hop_distance,
)

UNIT = SpaceDims(1.0, 1.0, 1.0)
BOX = SpaceDims(2.0, 1.0, 3.0)


class TestAnchors:
    def test_canonical_corners(self):
        assert anchor_position(1, UNIT) == CartesianPos(0.0, 0.0, 0.0)
        assert anchor_position(7, UNIT) == CartesianPos(1.0, 1.0, 1.0)

    def test_all_distinct_and_at_corners(self):
        seen = set()
        for a in range(1, 9):
            p = anchor_position(a, BOX)
            assert p.x in (0.0, BOX.x_len)
            assert p.y in (0.0, BOX.y_len)
            assert p.z in (0.0, BOX.z_len)
            seen.add((p.x, p.y, p.z))
        assert len(seen) == 8

    @pytest.mark.parametrize("bad", [0, 9, -1])
    def test_index_out_of_range(self, bad):
        with pytest.raises(ValueError):
            anchor_position(bad, UNIT)


class TestViewportEnumeration:
    def test_exactly_24(self):
        assert len(enumerate_viewports()) == 24

    def test_triples_unique(self):
        triples = {frozenset(vp.anchors) for vp in enumerate_viewports()}
        assert len(triples) == 24

    def test_nine_per_anchor(self):
        for a in range(1, 9):
            assert sum(1 for vp in enumerate_viewports() if a in vp) == 9

    def test_construction_validates_coplanarity(self):
        # A face and the right-angle corner are enforced on every triple
        # (enumerated ones pass by construction).
        for vp in enumerate_viewports():
            Viewport(*vp.anchors)

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            Viewport(1, 1, 2)

    def test_rejects_non_coplanar(self):
        # A1=(0,0,0), A7=(X,Y,Z) never share a face.
        with pytest.raises(ValueError):
            Viewport(1, 7, 2)

    def test_rejects_diagonal_first_anchor(self):
        # A1 and A3 are face-diagonal: A1 cannot be the right-angle corner.
        with pytest.raises(ValueError):
            Viewport(1, 3, 2)


class TestConversion:
    CANONICAL = Viewport(1, 2, 5)  # A1=(0,0,0), A2=(X,0,0), A5=(0,0,Z)

    def test_point_at_first_anchor(self):
        r = cartesian_to_curvilinear(CartesianPos(0, 0, 0), self.CANONICAL, BOX)
        assert r == (0.0, BOX.x_len, BOX.z_len)

    def test_distances_are_euclidean(self):
        p = CartesianPos(0.5, 0.5, 0.5)
        for vp in enumerate_viewports():
            got = cartesian_to_curvilinear(p, vp, UNIT)
            for value, a in zip(got, vp.anchors):
                assert value == pytest.approx(p.distance_to(anchor_position(a, UNIT)))

    def test_inverse_of_anchor_point(self):
        p = curvilinear_to_cartesian((0.0, BOX.x_len, BOX.z_len), self.CANONICAL, BOX)
        assert (p.x, p.y, p.z) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)

    def test_equal_first_two_distances_centers_first_axis(self):
        # r_dot == r_ddot puts the point on the mid-plane of A1->A2.
        p0 = CartesianPos(BOX.x_len / 2, 0.25, 0.75)
        tri = cartesian_to_curvilinear(p0, self.CANONICAL, BOX)
        assert tri[0] == pytest.approx(tri[1])
        p = curvilinear_to_cartesian(tri, self.CANONICAL, BOX)
        assert p.x == pytest.approx(BOX.x_len / 2)

    @pytest.mark.parametrize("dims", [UNIT, BOX])
    def test_round_trip_random_points(self, dims):
        rng = random.Random(42)
        scale = max(dims.x_len, dims.y_len, dims.z_len)
        for _ in range(100):
            p = CartesianPos(
                rng.uniform(0, dims.x_len),
                rng.uniform(0, dims.y_len),
                rng.uniform(0, dims.z_len),
            )
            for vp in enumerate_viewports():
                tri = cartesian_to_curvilinear(p, vp, dims)
                q = curvilinear_to_cartesian(tri, vp, dims)
                err = max(abs(p.x - q.x), abs(p.y - q.y), abs(p.z - q.z))
                assert err <= 1e-9 * scale

    def test_round_trip_stays_inside_box(self):
        rng = random.Random(7)
        for _ in range(50):
            p = CartesianPos(rng.random(), rng.random(), rng.random())
            for vp in enumerate_viewports():
                q = curvilinear_to_cartesian(
                    cartesian_to_curvilinear(p, vp, UNIT), vp, UNIT
                )
                assert q.inside(UNIT, tol=1e-9)

    def test_infeasible_triple_raises(self):
        with pytest.raises(InfeasibleAddressError):
            curvilinear_to_cartesian((10.0, 1.0, 1.0), self.CANONICAL, UNIT)

    def test_face_point_tolerates_float_dust(self):
        # Points on the viewport face itself have a zero radicand.
        p = CartesianPos(0.3, 0.0, 0.7)
        tri = cartesian_to_curvilinear(p, self.CANONICAL, UNIT)
        q = curvilinear_to_cartesian(tri, self.CANONICAL, UNIT)
        assert q.y == pytest.approx(0.0, abs=1e-9)


class TestIdealHopDistance:
    def test_zero_at_anchor(self):
        assert ideal_hop_distance(CartesianPos(0, 0, 0), 1, UNIT, 0.1) == 0

    def test_exact_multiple_is_inclusive(self):
        p = CartesianPos(0.3, 0.0, 0.0)
        assert ideal_hop_distance(p, 1, UNIT, 0.1) == 3

    def test_just_past_boundary_rounds_up(self):
        p = CartesianPos(0.3001, 0.0, 0.0)
        assert ideal_hop_distance(p, 1, UNIT, 0.1) == 4

    def test_bad_hop_len(self):
        with pytest.raises(ValueError):
            ideal_hop_distance(CartesianPos(0, 0, 0), 1, UNIT, 0.0)

    def test_matches_bfs_oracle_within_one(self):
        # Dense 9^3 lattice, hop_len = 2.5 spacings: BFS over the
        # radius graph agrees with the Euclidean ceiling within 1 hop.
        n, spacing = 9, 0.00125
        dims = SpaceDims((n - 1) * spacing, (n - 1) * spacing, (n - 1) * spacing)
        hop_len = 2.5 * spacing
        pts = np.array([
            (i * spacing, j * spacing, k * spacing)
            for i in range(n) for j in range(n) for k in range(n)
        ])
        dist = np.full(len(pts), -1)
        dist[0] = 0  # index 0 is the A1 corner
        queue = deque([0])
        r2 = hop_len**2 * (1 + 1e-12)
        while queue:
            u = queue.popleft()
            d2 = ((pts - pts[u]) ** 2).sum(axis=1)
            for v in np.flatnonzero((d2 > 0) & (d2 <= r2)):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        for idx in range(len(pts)):
            p = CartesianPos(*pts[idx])
            ideal = ideal_hop_distance(p, 1, dims, hop_len)
            assert abs(ideal - dist[idx]) <= 1


class TestAddressTypes:
    def test_usable_address_rejects_negative(self):
        with pytest.raises(ValueError):
            UsableAddress(-1, 0, 0)

    def test_hop_address_projection(self):
        addr = HopAddress((0, 1, 2, 3, 4, 5, 6, 7))
        ua = addr.project(Viewport(1, 2, 5))
        assert ua == UsableAddress(0, 1, 4)

    def test_incomplete_projection_is_none(self):
        addr = HopAddress((0, None, 2, 3, 4, 5, 6, 7))
        assert not addr.complete
        assert addr.project(Viewport(1, 2, 5)) is None
        assert addr.project(Viewport(1, 4, 5)) == UsableAddress(0, 3, 4)

    def test_hop_address_needs_eight(self):
        with pytest.raises(ValueError):
            HopAddress((1, 2, 3))

    def test_space_dims_positive(self):
        with pytest.raises(ValueError):
            SpaceDims(1.0, 0.0, 1.0)
