"""Viewport selection for a communicating pair.

The sender picks the anchor triple (coordinate system) that the whole
packet route will use. The model-fitting heuristic wants one anchor
aligned with the pair (best zone resolution along the path) and two
anchors far from it (least path curvature); the search runs over the 9
viewports containing the prioritized anchor and costs 101 integer
operations under the documented accounting. The brute-force reference
minimizes the actual retransmitter count over all 24 viewports, and the
random baseline is the uniform choice (reports use the exact 24-way
mean instead of sampling).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coords import HopAddress, UsableAddress, Viewport, enumerate_viewports
from .routing import RouteSpec, should_retransmit


class Prioritization(enum.Enum):
    """Which anchor role is fixed first by the heuristic."""

    RESOLUTION = "resolution"
    DISTANCE = "distance"


@dataclass(frozen=True)
class ViewportChoice:
    vp: Viewport
    ua1: UsableAddress
    ua2: UsableAddress


@dataclass
class OpCounter:
    """Integer-operation budget of one heuristic run.

    Buckets follow the documented per-step accounting: 2 ops per anchor
    scored in the opening scan, 2 for initializing the best-so-far
    state, 9 per candidate-viewport iteration, 2 for the final address
    projections.
    """

    scan: int = 0
    init: int = 0
    loop: int = 0
    projection: int = 0
    loop_iterations: int = 0

    @property
    def total(self) -> int:
        return self.scan + self.init + self.loop + self.projection


def _distances(addr: HopAddress) -> tuple[int, ...]:
    if not addr.complete:
        raise ValueError("viewport selection requires a complete 8-anchor address")
    return addr.r  # type: ignore[return-value]


def aligned_anchor(
    addr1: HopAddress, addr2: HopAddress, counter: OpCounter | None = None
) -> int:
    """Anchor whose distance difference to the pair is largest.

    Maximizing |R(P1,A) - R(P2,A)| approximates an anchor collinear with
    the pair. Ties break to the lowest anchor index. Integer math only.
    """
    r1, r2 = _distances(addr1), _distances(addr2)
    best_anchor = 1
    best_score = -1
    for a in range(1, 9):
        score = abs(r1[a - 1] - r2[a - 1])
        if counter is not None:
            counter.scan += 2
        if score > best_score:
            best_score = score
            best_anchor = a
    return best_anchor


def remote_anchor(
    addr1: HopAddress, addr2: HopAddress, counter: OpCounter | None = None
) -> int:
    """Anchor farthest from the pair as a whole (min of the two distances).

    Ties break to the lowest anchor index.
    """
    r1, r2 = _distances(addr1), _distances(addr2)
    best_anchor = 1
    best_score = -1
    for a in range(1, 9):
        score = min(r1[a - 1], r2[a - 1])
        if counter is not None:
            counter.scan += 2
        if score > best_score:
            best_score = score
            best_anchor = a
    return best_anchor


def select_viewport(
    addr1: HopAddress,
    addr2: HopAddress,
    prio: Prioritization = Prioritization.RESOLUTION,
    counter: OpCounter | None = None,
) -> ViewportChoice:
    """Model-fitting viewport choice for the pair.

    RESOLUTION mode fixes the aligned anchor first, then among the 9
    viewports containing it keeps the one whose two remaining anchors
    are collectively farthest from the pair (min over the four
    anchor-to-endpoint distances; first strict maximizer in enumeration
    order wins). DISTANCE mode swaps the priorities: fix the remote
    anchor first, then keep the viewport whose remaining anchors
    contain the best-aligned candidate.
    """
    r1, r2 = _distances(addr1), _distances(addr2)
    if prio is Prioritization.RESOLUTION:
        fixed = aligned_anchor(addr1, addr2, counter)
    else:
        fixed = remote_anchor(addr1, addr2, counter)

    best_vp: Viewport | None = None
    max_score = -1
    if counter is not None:
        counter.init += 2

    for vp in enumerate_viewports():
        if fixed not in vp:
            continue
        if counter is not None:
            counter.loop += 9
            counter.loop_iterations += 1
        others = [a for a in vp.anchors if a != fixed]
        if prio is Prioritization.RESOLUTION:
            score = min(
                r1[others[0] - 1], r2[others[0] - 1],
                r1[others[1] - 1], r2[others[1] - 1],
            )
        else:
            score = max(
                abs(r1[others[0] - 1] - r2[others[0] - 1]),
                abs(r1[others[1] - 1] - r2[others[1] - 1]),
            )
        if score > max_score:
            max_score = score
            best_vp = vp

    assert best_vp is not None
    ua1 = addr1.project(best_vp)
    ua2 = addr2.project(best_vp)
    assert ua1 is not None and ua2 is not None
    if counter is not None:
        counter.projection += 2
    return ViewportChoice(best_vp, ua1, ua2)


ZoneTable = Mapping[Viewport, Iterable[UsableAddress] | Mapping[UsableAddress, int]]


def retransmitter_counts(
    addr1: HopAddress, addr2: HopAddress, tables: ZoneTable, m: int
) -> dict[Viewport, int]:
    """Retransmitter count under every viewport in ``tables``.

    A table entry is counted as given: pass one address per zone for
    zone counts, or a zone -> population mapping (or one address per
    node) for node-weighted counts.
    """
    counts: dict[Viewport, int] = {}
    for vp, zones in tables.items():
        ua1 = addr1.project(vp)
        ua2 = addr2.project(vp)
        if ua1 is None or ua2 is None:
            raise ValueError(f"endpoint address incomplete under viewport {vp.anchors}")
        spec = RouteSpec(vp, ua1, ua2, m)
        if isinstance(zones, Mapping):
            total = sum(w for ua, w in zones.items() if should_retransmit(ua, spec))
        else:
            total = sum(1 for ua in zones if should_retransmit(ua, spec))
        counts[vp] = total
    return counts


def optimal_viewport_bruteforce(
    addr1: HopAddress, addr2: HopAddress, tables: ZoneTable, m: int
) -> Viewport:
    """The viewport minimizing the retransmitter count, over all given.

    Ties break to the earliest viewport in canonical enumeration order.
    """
    counts = retransmitter_counts(addr1, addr2, tables, m)
    best_vp = None
    best = None
    for vp in enumerate_viewports():
        if vp not in counts:
            continue
        if best is None or counts[vp] < best:
            best = counts[vp]
            best_vp = vp
    if best_vp is None:
        raise ValueError("no viewports in table")
    return best_vp


def random_viewport(rng: random.Random) -> Viewport:
    """Uniform draw among the 24 viewports; deterministic per seeded rng."""
    vps = enumerate_viewports()
    return vps[rng.randrange(len(vps))]
