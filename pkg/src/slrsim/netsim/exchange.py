"""One exchange cycle: concurrent pair packets under SLR or CORONA.

Every sender picks a viewport for its pair, writes the endpoint usable
addresses and the path width into the packet header, and broadcasts.
Each receiving node suppresses duplicate packet ids, derives its own
usable address from the packet's coordinate-system field, and
retransmits iff the scheme's predicate passes. A pair counts as
delivered when any active node sharing the recipient's full address
(its zone) holds the packet. Packet-id memory lasts for the cycle,
realizing the short duplicate-suppression TTL.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from ..coords import Viewport
from ..routing import RouteSpec, corona_should_retransmit, should_retransmit
from ..viewport import Prioritization, select_viewport
from .config import SimConfig
from .engine import SlotEngine
from .field import Field
from .packets import DataPacket
from .rng import SALT_DATA, SALT_IDS, derive_seed, key_hash


class Scheme(enum.Enum):
    SLR = "slr"
    CORONA = "corona"


@dataclass(frozen=True)
class PairOutcome:
    sender: int
    recipient: int
    packet_id: int
    viewport: tuple[int, int, int]
    delivered: bool
    first_delivery_slot: int | None
    retransmitters: int  # nodes other than the sender that transmitted
    transmissions: int  # total transmissions of this packet, sender included
    transmitter_ids: tuple[int, ...]  # every node that transmitted, sorted
    receiver_ids: tuple[int, ...]  # every node that held the packet, sorted


@dataclass(frozen=True)
class ExchangeReport:
    scheme: Scheme
    m: int
    prioritization: Prioritization
    outcomes: tuple[PairOutcome, ...]
    total_transmissions: int
    active_nodes: int
    slots: int

    @property
    def delivered_count(self) -> int:
        return sum(1 for o in self.outcomes if o.delivered)


class _PacketState:
    __slots__ = ("pkt", "uid", "spec", "zone", "seen", "delivered_slot", "sender")

    def __init__(self, pkt, uid, spec, zone, sender):
        self.pkt = pkt
        self.uid = uid
        self.spec = spec
        self.zone = zone
        self.sender = sender
        self.seen: set[int] = {sender}
        self.delivered_slot: int | None = None


def run_data_exchange(
    field: Field,
    pairs: list[tuple[int, int]],
    scheme: Scheme,
    m: int,
    prio: Prioritization = Prioritization.RESOLUTION,
    cfg: SimConfig | None = None,
    rng: random.Random | None = None,
) -> ExchangeReport:
    """Simulate one cycle of concurrent pair exchanges.

    ``rng`` supplies the 8-bit packet ids (sampled without replacement
    within the cycle); defaults to a stream derived from the config
    seed.
    """
    cfg = cfg or field.cfg
    if rng is None:
        rng = random.Random(derive_seed(cfg.seed, SALT_IDS))
    if len(pairs) > 256:
        raise ValueError("at most 256 concurrent pairs per cycle (8-bit id space)")

    engine = SlotEngine(field, cfg)
    predicate = should_retransmit if scheme is Scheme.SLR else corona_should_retransmit
    ids = rng.sample(range(256), len(pairs))

    states: dict[int, _PacketState] = {}
    order: list[_PacketState] = []
    for (sender, recipient), packet_id in zip(pairs, ids):
        for node in (sender, recipient):
            if not field.active[node]:
                raise ValueError(f"pair endpoint {node} is inactive")
            if not field.address_complete(node):
                raise ValueError(f"pair endpoint {node} has an incomplete address")
        choice = select_viewport(field.address(sender), field.address(recipient), prio)
        spec = RouteSpec(choice.vp, choice.ua1, choice.ua2, m)
        pkt = DataPacket(packet_id, choice.vp, choice.ua1, choice.ua2, m)
        uid = key_hash(cfg.seed, SALT_DATA, packet_id, sender, recipient)
        state = _PacketState(pkt, uid, spec, field.zone_key(recipient), sender)
        if field.zone_key(sender) == state.zone:
            state.delivered_slot = 0  # sender already holds it in the zone
        states[uid] = state
        order.append(state)
        engine.schedule(0, sender, uid)

    while engine.has_events():
        slot, decodes = engine.process_next_slot()
        for d in decodes:
            state = states[d.uid]
            if d.rx in state.seen:
                continue
            state.seen.add(d.rx)
            if state.delivered_slot is None and field.zone_key(d.rx) == state.zone:
                state.delivered_slot = slot
            ua = field.usable_address(d.rx, state.spec.vp)
            if ua is None:
                continue  # incomplete address: cannot route, consume
            if predicate(ua, state.spec):
                engine.schedule(slot + engine.backoff(d.uid, d.rx), d.rx, d.uid)

    outcomes = []
    for (sender, recipient), state in zip(pairs, order):
        transmitters = engine.transmitters_by_uid.get(state.uid, set())
        outcomes.append(
            PairOutcome(
                sender=sender,
                recipient=recipient,
                packet_id=state.pkt.packet_id,
                viewport=state.spec.vp.anchors,
                delivered=state.delivered_slot is not None,
                first_delivery_slot=state.delivered_slot,
                retransmitters=len(transmitters - {sender}),
                transmissions=len(transmitters),
                transmitter_ids=tuple(sorted(transmitters)),
                receiver_ids=tuple(sorted(state.seen)),
            )
        )
    return ExchangeReport(
        scheme=scheme,
        m=m,
        prioritization=prio,
        outcomes=tuple(outcomes),
        total_transmissions=int(engine.tx_count.sum()),
        active_nodes=int(field.active.sum()),
        slots=engine.last_slot + 1,
    )
