"""Integer-only retransmission predicates.

A node holding a packet decides, from nothing but its own usable
address and the two endpoint addresses in the packet header, whether it
lies on the width-m curvilinear line through the endpoints and inside
the segment box between them. Everything here is exact integer
arithmetic: no floats can be produced by these operations, which is
part of the contract (nano-CPU constraint) and is asserted by tests.

The CORONA baseline predicate (flood the box between the pair's
per-anchor min and max distances) lives here too, sharing the viewport
so comparisons isolate the routing rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coords import UsableAddress, Viewport

# Hop counts are bounded by the network hop diameter; the wire format
# and the 32-bit intermediate-product bound both assume < 2**15.
MAX_HOP = 2**15 - 1


@dataclass(frozen=True)
class RouteSpec:
    """The routing fields a sender writes into a packet header."""

    vp: Viewport
    ua1: UsableAddress
    ua2: UsableAddress
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"path width m must be >= 1, got {self.m}")
        for ua in (self.ua1, self.ua2):
            _check_bound(ua)


def _check_bound(ua: UsableAddress) -> None:
    if max(ua.r_dot, ua.r_ddot, ua.r_dddot) > MAX_HOP:
        raise ValueError(f"hop count exceeds the 2**15-1 bound: {ua}")


def delta_a(ua: UsableAddress, ua1: UsableAddress, ua2: UsableAddress) -> int:
    """Cross term of the line condition in the (r_dot, r_ddot) plane."""
    return (ua.r_dot - ua1.r_dot) * (ua2.r_ddot - ua1.r_ddot) - (
        ua.r_ddot - ua1.r_ddot
    ) * (ua2.r_dot - ua1.r_dot)


def delta_b(ua: UsableAddress, ua1: UsableAddress, ua2: UsableAddress) -> int:
    """Cross term of the line condition in the (r_dot, r_dddot) plane."""
    return (ua.r_dot - ua1.r_dot) * (ua2.r_dddot - ua1.r_dddot) - (
        ua.r_dddot - ua1.r_dddot
    ) * (ua2.r_dot - ua1.r_dot)


def _band_hit(d: int, d_shift_first: int, d_shift_second: int, d_shift_both: int) -> bool:
    # A sign change of the cross term under any of the three m-shifts
    # means the exact line crosses within the node's cell.
    return (
        d * d_shift_first <= 0
        or d * d_shift_second <= 0
        or d * d_shift_both <= 0
    )


def on_line(ua: UsableAddress, spec: RouteSpec) -> bool:
    """Is ``ua`` on the width-m curvilinear line through ua1 and ua2?"""
    ua1, ua2, m = spec.ua1, spec.ua2, spec.m
    d_r = ua2.r_dot - ua1.r_dot
    d_rr = ua2.r_ddot - ua1.r_ddot
    d_rrr = ua2.r_dddot - ua1.r_dddot

    da = delta_a(ua, ua1, ua2)
    # Shifting r_dot by -m changes delta_a by -m*d_rr; shifting r_ddot
    # by -m changes it by +m*d_r (and likewise for the b family).
    hit_a = _band_hit(da, da - m * d_rr, da + m * d_r, da - m * d_rr + m * d_r)
    if not hit_a:
        return False

    db = delta_b(ua, ua1, ua2)
    return _band_hit(db, db - m * d_rrr, db + m * d_r, db - m * d_rrr + m * d_r)


def on_segment(ua: UsableAddress, spec: RouteSpec) -> bool:
    """Is ``ua`` inside the per-coordinate interval box between ua1 and ua2?"""
    ua1, ua2 = spec.ua1, spec.ua2
    return (
        (ua.r_dot - ua2.r_dot) * (ua.r_dot - ua1.r_dot) <= 0
        and (ua.r_ddot - ua2.r_ddot) * (ua.r_ddot - ua1.r_ddot) <= 0
        and (ua.r_dddot - ua2.r_dddot) * (ua.r_dddot - ua1.r_dddot) <= 0
    )


def should_retransmit(ua: UsableAddress, spec: RouteSpec) -> bool:
    """The retransmission decision: segment check first, then the line check.

    Duplicate-id suppression is the caller's job; this is the pure
    geometric decision a node makes for a fresh packet.
    """
    _check_bound(ua)
    return on_segment(ua, spec) and on_line(ua, spec)


def corona_should_retransmit(ua: UsableAddress, spec: RouteSpec) -> bool:
    """Baseline predicate: flood the box between the pair's anchor distances.

    For every coordinate, the node's distance must lie between the
    endpoints' min and max. Ignores the line condition entirely (and
    therefore contains every width-m retransmitter set). spec.m is
    unused.
    """
    _check_bound(ua)
    ua1, ua2 = spec.ua1, spec.ua2
    for r, r1, r2 in (
        (ua.r_dot, ua1.r_dot, ua2.r_dot),
        (ua.r_ddot, ua1.r_ddot, ua2.r_ddot),
        (ua.r_dddot, ua1.r_dddot, ua2.r_dddot),
    ):
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
        if not lo <= r <= hi:
            return False
    return True
