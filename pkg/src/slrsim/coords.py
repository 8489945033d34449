"""Geometry of the rectangular network space.

Anchor nodes sit at the 8 corners of a box. A *viewport* is an ordered
triple of anchors on one face of the box; the three hop distances of a
node towards those anchors form its usable address. This module holds
the float-exact geometry: corner placement, viewport enumeration, and
the closed-form conversion between Cartesian coordinates and the three
anchor distances (used as the test oracle for the integer machinery).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class InfeasibleAddressError(ValueError):
    """A distance triple has no corresponding point inside the space."""


# Corner coefficients for anchors 1..8 (multiply by the side lengths).
# A1..A4 walk the z=0 face so each anchor hears its predecessor's flood;
# A5..A8 mirror them on the z=Z face.
ANCHOR_CORNERS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (1, 0, 0),
    (1, 1, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 0, 1),
    (1, 1, 1),
    (0, 1, 1),
)

# Radicand values in [-FEASIBILITY_TOL * r_dot**2, 0) are treated as zero:
# guards float noise for points on the viewport face itself.
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class SpaceDims:
    """Side lengths of the network space, in meters."""

    x_len: float
    y_len: float
    z_len: float

    def __post_init__(self) -> None:
        if not (self.x_len > 0 and self.y_len > 0 and self.z_len > 0):
            raise ValueError(f"side lengths must be positive, got {self}")

    @property
    def diagonal(self) -> float:
        return math.sqrt(self.x_len**2 + self.y_len**2 + self.z_len**2)


@dataclass(frozen=True)
class CartesianPos:
    """A point in the space, in meters."""

    x: float
    y: float
    z: float

    def distance_to(self, other: "CartesianPos") -> float:
        return math.sqrt(
            (self.x - other.x) ** 2 + (self.y - other.y) ** 2 + (self.z - other.z) ** 2
        )

    def inside(self, dims: SpaceDims, tol: float = 0.0) -> bool:
        return (
            -tol <= self.x <= dims.x_len + tol
            and -tol <= self.y <= dims.y_len + tol
            and -tol <= self.z <= dims.z_len + tol
        )


@dataclass(frozen=True)
class Viewport:
    """Ordered anchor triple on one face of the space.

    ``a_dot`` is the corner at the right angle of the triple (adjacent
    along face edges to both others); the conversion formulas measure
    their first axis along a_dot->a_ddot and their third axis along
    a_dot->a_dddot.
    """

    a_dot: int
    a_ddot: int
    a_dddot: int

    def __post_init__(self) -> None:
        trio = (self.a_dot, self.a_ddot, self.a_dddot)
        for a in trio:
            _check_anchor_index(a)
        if len(set(trio)) != 3:
            raise ValueError(f"viewport anchors must be distinct, got {trio}")
        corners = [ANCHOR_CORNERS[a - 1] for a in trio]
        if not any(len({c[ax] for c in corners}) == 1 for ax in range(3)):
            raise ValueError(f"viewport anchors {trio} do not share a face")
        for other in corners[1:]:
            if sum(a != b for a, b in zip(corners[0], other)) != 1:
                raise ValueError(
                    f"anchor {self.a_dot} is not edge-adjacent to both others in {trio}"
                )

    @property
    def anchors(self) -> tuple[int, int, int]:
        return (self.a_dot, self.a_ddot, self.a_dddot)

    def __contains__(self, anchor: int) -> bool:
        return anchor in self.anchors


@dataclass(frozen=True)
class UsableAddress:
    """Three non-negative hop counts towards a viewport's anchors."""

    r_dot: int
    r_ddot: int
    r_dddot: int

    def __post_init__(self) -> None:
        if min(self.r_dot, self.r_ddot, self.r_dddot) < 0:
            raise ValueError(f"hop counts must be non-negative, got {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r_dot, self.r_ddot, self.r_dddot)


@dataclass(frozen=True)
class HopAddress:
    """A node's full address: hop distances towards anchors A1..A8.

    Components missed during the setup flood are ``None``; such a node
    cannot derive usable addresses for viewports touching the missing
    anchors.
    """

    r: tuple[int | None, int | None, int | None, int | None,
             int | None, int | None, int | None, int | None]

    def __post_init__(self) -> None:
        if len(self.r) != 8:
            raise ValueError(f"expected 8 components, got {len(self.r)}")
        if any(v is not None and v < 0 for v in self.r):
            raise ValueError(f"hop counts must be non-negative, got {self.r}")

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.r)

    def distance(self, anchor: int) -> int | None:
        _check_anchor_index(anchor)
        return self.r[anchor - 1]

    def project(self, vp: Viewport) -> UsableAddress | None:
        """Usable address under ``vp``; None if any component is missing."""
        vals = tuple(self.r[a - 1] for a in vp.anchors)
        if any(v is None for v in vals):
            return None
        return UsableAddress(*vals)


def _check_anchor_index(a: int) -> None:
    if not isinstance(a, int) or isinstance(a, bool) or not 1 <= a <= 8:
        raise ValueError(f"anchor index must be an integer in 1..8, got {a!r}")


def anchor_position(a: int, dims: SpaceDims) -> CartesianPos:
    """Corner coordinates of anchor ``a`` under the canonical indexing."""
    _check_anchor_index(a)
    cx, cy, cz = ANCHOR_CORNERS[a - 1]
    return CartesianPos(cx * dims.x_len, cy * dims.y_len, cz * dims.z_len)


@lru_cache(maxsize=1)
def enumerate_viewports() -> tuple[Viewport, ...]:
    """All 24 valid viewports: 4 per face, 6 faces.

    Each triple of distinct corner anchors sharing a face appears once.
    The order is canonical and stable (faces by axis then side, then the
    omitted corner in cyclic face order); tie-breaking rules elsewhere
    rely on this ordering.
    """
    viewports: list[Viewport] = []
    for axis in range(3):
        for side in (0, 1):
            face = [a for a in range(1, 9) if ANCHOR_CORNERS[a - 1][axis] == side]
            cycle = _face_cycle(face)
            for omitted in range(4):
                kept = [cycle[(omitted + 1) % 4], cycle[(omitted + 2) % 4],
                        cycle[(omitted + 3) % 4]]
                a_dot = cycle[(omitted + 2) % 4]  # diagonal to the omitted corner
                rest = sorted(a for a in kept if a != a_dot)
                viewports.append(Viewport(a_dot, rest[0], rest[1]))
    assert len(viewports) == 24
    return tuple(viewports)


def _face_cycle(face: list[int]) -> list[int]:
    """The four corner anchors of one face in cyclic (edge-walk) order."""
    ordered = [min(face)]
    remaining = set(face) - {ordered[0]}
    while remaining:
        prev = ANCHOR_CORNERS[ordered[-1] - 1]
        nxt = min(
            a for a in remaining
            if sum(p != q for p, q in zip(prev, ANCHOR_CORNERS[a - 1])) == 1
        )
        ordered.append(nxt)
        remaining.discard(nxt)
    return ordered


def cartesian_to_curvilinear(
    p: CartesianPos, vp: Viewport, dims: SpaceDims
) -> tuple[float, float, float]:
    """Exact Euclidean distances from ``p`` to the viewport's anchors."""
    return (
        p.distance_to(anchor_position(vp.a_dot, dims)),
        p.distance_to(anchor_position(vp.a_ddot, dims)),
        p.distance_to(anchor_position(vp.a_dddot, dims)),
    )


def curvilinear_to_cartesian(
    ua: tuple[float, float, float], vp: Viewport, dims: SpaceDims
) -> CartesianPos:
    """Invert a real-valued distance triple back to the unique point.

    Works in the viewport's local frame (origin at a_dot, first axis
    towards a_ddot, third axis towards a_dddot, second axis into the
    box), where the closed-form inversion is

        u = (r_dot^2 - r_ddot^2 + X^2) / 2X
        w = (r_dot^2 - r_dddot^2 + Z^2) / 2Z
        v = +sqrt(r_dot^2 - u^2 - w^2)

    with X, Z the local side lengths. The negative v root would land
    outside the box and is rejected.

    Raises InfeasibleAddressError when the radicand is negative beyond
    the float-noise tolerance.
    """
    r_dot, r_ddot, r_dddot = ua
    origin = anchor_position(vp.a_dot, dims)
    p_u = anchor_position(vp.a_ddot, dims)
    p_w = anchor_position(vp.a_dddot, dims)

    u_axis, x_loc = _axis_between(origin, p_u)
    w_axis, z_loc = _axis_between(origin, p_w)
    v_axis = _inward_axis(origin, u_axis, w_axis, dims)

    u = (r_dot**2 - r_ddot**2 + x_loc**2) / (2.0 * x_loc)
    w = (r_dot**2 - r_dddot**2 + z_loc**2) / (2.0 * z_loc)
    radicand = r_dot**2 - u**2 - w**2
    if radicand < 0:
        if radicand < -FEASIBILITY_TOL * r_dot**2:
            raise InfeasibleAddressError(
                f"distance triple {ua} is not realizable under viewport "
                f"{vp.anchors}: radicand {radicand:.3e}"
            )
        radicand = 0.0
    v = math.sqrt(radicand)

    return CartesianPos(
        origin.x + u * u_axis[0] + v * v_axis[0] + w * w_axis[0],
        origin.y + u * u_axis[1] + v * v_axis[1] + w * w_axis[1],
        origin.z + u * u_axis[2] + v * v_axis[2] + w * w_axis[2],
    )


def _axis_between(a: CartesianPos, b: CartesianPos) -> tuple[tuple[int, int, int], float]:
    """Unit direction a->b for edge-adjacent corners, plus the edge length."""
    d = (b.x - a.x, b.y - a.y, b.z - a.z)
    axis = [0, 0, 0]
    length = 0.0
    for i, comp in enumerate(d):
        if comp != 0.0:
            axis[i] = 1 if comp > 0 else -1
            length = abs(comp)
    return (axis[0], axis[1], axis[2]), length


def _inward_axis(
    origin: CartesianPos,
    u_axis: tuple[int, int, int],
    w_axis: tuple[int, int, int],
    dims: SpaceDims,
) -> tuple[int, int, int]:
    """The remaining axis direction, signed to point into the box."""
    free = [i for i in range(3) if u_axis[i] == 0 and w_axis[i] == 0]
    assert len(free) == 1
    i = free[0]
    coord = (origin.x, origin.y, origin.z)[i]
    sign = 1 if coord == 0.0 else -1
    axis = [0, 0, 0]
    axis[i] = sign
    return (axis[0], axis[1], axis[2])


def ideal_hop_distance(p: CartesianPos, a: int, dims: SpaceDims, hop_len: float) -> int:
    """Idealized hop count: ceiling of Euclidean distance over one-hop reach.

    A distance of exactly k*hop_len counts as k hops (the reach boundary
    is inclusive). Test-oracle helper only; the simulator derives real
    hop counts by flooding.
    """
    if hop_len <= 0:
        raise ValueError(f"hop_len must be positive, got {hop_len}")
    d = p.distance_to(anchor_position(a, dims))
    if d == 0.0:
        return 0
    return max(0, math.ceil(d / hop_len - 1e-9))
