"""Anchor cascade: the one-time addressing flood.

Anchor A1 broadcasts a setup packet with hop count 0. Every node, on
its first reception from a given anchor, memorizes hop count + 1 as its
distance from that anchor; non-anchor nodes then rebroadcast with the
incremented count. An anchor hearing the *previous* anchor's setup
packet schedules its own flood after a completion timeout, so the eight
floods cascade A1 -> A2 -> ... -> A8. Nodes missed by the direct wave
still pick values up from neighbor rebroadcasts (possibly one hop
high); nodes cut off entirely keep incomplete addresses and cannot
route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SimConfig
from .engine import SlotEngine
from .field import Field
from .rng import SALT_FLOOD, key_hash

# Timeout before a triggered anchor starts flooding: an upper bound on
# the previous flood's completion, 4x the estimated hop diameter.
_TIMEOUT_DIAMETER_FACTOR = 4


@dataclass(frozen=True)
class FloodStats:
    slots: int
    transmissions: int
    started_anchors: tuple[int, ...]
    addressed_nodes: int
    timeout_slots: int


def run_setup_flood(field: Field, cfg: SimConfig | None = None) -> FloodStats:
    """Run the 8-anchor cascade, filling in field.addresses in place."""
    cfg = cfg or field.cfg
    engine = SlotEngine(field, cfg)
    diameter_est = max(1, math.ceil(field.dims.diagonal / engine.reach))
    timeout_slots = _TIMEOUT_DIAMETER_FACTOR * diameter_est

    uid_of = {a: key_hash(cfg.seed, SALT_FLOOD, a) for a in range(1, 9)}
    anchor_of = {uid: a for a, uid in uid_of.items()}
    anchor_index_of_node = {
        node_id: a + 1 for a, node_id in enumerate(field.anchor_ids)
    }

    addresses = field.addresses
    is_anchor = np.zeros(field.node_count, dtype=bool)
    is_anchor[list(field.anchor_ids)] = True

    def receiver_mask(ids: np.ndarray) -> np.ndarray:
        # Fully addressed non-anchor nodes have nothing left to learn;
        # anchors always listen (the cascade trigger).
        return (addresses[ids].min(axis=1) < 0) | is_anchor[ids]

    started = {1}
    pending_starts: dict[int, list[int]] = {}
    if field.active[field.anchor_ids[0]]:
        engine.schedule(0, field.anchor_ids[0], uid_of[1], tag=0)

    while engine.has_events() or pending_starts:
        event_slot = engine.next_slot()
        start_slot = min(pending_starts) if pending_starts else None
        if start_slot is not None and (event_slot is None or start_slot <= event_slot):
            for a in pending_starts.pop(start_slot):
                engine.schedule(start_slot, field.anchor_ids[a - 1], uid_of[a], tag=0)
            continue

        slot, decodes = engine.process_next_slot(receiver_mask)
        for d in decodes:
            a = anchor_of[d.uid]
            value = d.tag + 1
            if addresses[d.rx, a - 1] < 0:
                addresses[d.rx, a - 1] = value
                if not is_anchor[d.rx]:
                    engine.schedule(
                        slot + engine.backoff(d.uid, d.rx), d.rx, d.uid, tag=value
                    )
            nxt = anchor_index_of_node.get(d.rx)
            if nxt is not None and nxt == a + 1 and nxt not in started:
                started.add(nxt)
                pending_starts.setdefault(slot + timeout_slots, []).append(nxt)

    addressed = int(((addresses >= 0).all(axis=1) & field.active).sum())
    return FloodStats(
        slots=engine.last_slot + 1,
        transmissions=int(engine.tx_count.sum()),
        started_anchors=tuple(sorted(started)),
        addressed_nodes=addressed,
        timeout_slots=timeout_slots,
    )
