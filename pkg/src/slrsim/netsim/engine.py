"""Slotted broadcast propagation with SINR reception.

Time advances in slots of one packet duration plus guard interval. All
transmissions scheduled into the same slot are concurrent. Same-slot
transmissions carrying identical packet content are synchronized copies
of one signal and combine constructively (their received powers add);
transmissions of *different* content interfere. A receiver locks onto
the strongest combined content and decodes it iff its SINR -- combined
power over noise plus everything else -- clears the threshold (capture
semantics). Constructive combining is what lets a synchronized flood
wavefront, whose rebroadcasts are bit-identical, propagate instead of
jamming itself.

With interference disabled every transmission is instead evaluated
against noise alone and receptions are independent.

Shadow fading is drawn per link-use, keyed by (seed, packet, tx, rx),
so outcomes are reproducible and order-independent. A node transmits a
given packet at most once, and transmits at most one packet per slot
(half-duplex: while transmitting it cannot receive).

Protocol layers (setup flood, data exchange) drive the loop: they
schedule transmissions, pull one slot's decode events at a time, and
react.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .channel import deterministic_reach, received_power_dBnW_np
from .config import SimConfig
from .field import Field
from .rng import SALT_BACKOFF, SALT_SHADOW, _mix64_np, key_hash, uniform01_np

# Listen radius factor over the deterministic reach: admits favorable
# shadow draws and constructive-combining gains up to +6 dB; receptions
# farther out are treated as impossible (deterministic truncation).
_LISTEN_FACTOR = 2.0


@dataclass(frozen=True)
class Transmission:
    node: int
    uid: int  # logical packet identity (RNG keying, once-per-node guard)
    tag: int  # protocol scratch carried with the transmission (e.g. hop count)


@dataclass(frozen=True)
class Decode:
    rx: int
    tx: int
    uid: int
    tag: int


class SlotEngine:
    def __init__(self, field: Field, cfg: SimConfig | None = None) -> None:
        self.field = field
        self.cfg = cfg or field.cfg
        self.reach = deterministic_reach(self.cfg)
        self.listen_radius = self.reach * _LISTEN_FACTOR
        self._offsets = _lattice_offsets(self.listen_radius / field.spacing)
        self._is_anchor = np.zeros(field.node_count, dtype=bool)
        self._is_anchor[list(field.anchor_ids)] = True
        self._queue: dict[int, list[Transmission]] = {}
        self._scheduled: set[tuple[int, int]] = set()
        self.tx_count = np.zeros(field.node_count, dtype=np.int64)
        self.transmitters_by_uid: dict[int, set[int]] = {}
        self.slots_processed = 0
        self.last_slot = -1
        self._noise_lin = 10.0 ** (self.cfg.noise_dBnW / 10.0)
        self._thr_lin = 10.0 ** (self.cfg.sinr_threshold_dB / 10.0)

    # -- scheduling ----------------------------------------------------

    def schedule(self, slot: int, node: int, uid: int, tag: int = 0) -> bool:
        """Queue a transmission; refuses repeats of (packet, node)."""
        if (uid, node) in self._scheduled:
            return False
        self._scheduled.add((uid, node))
        self._queue.setdefault(slot, []).append(Transmission(node, uid, tag))
        return True

    def backoff(self, uid: int, node: int) -> int:
        """Seeded retransmission delay in slots: 1..backoff_slots."""
        h = key_hash(self.cfg.seed, SALT_BACKOFF, uid, node)
        return 1 + h % self.cfg.backoff_slots

    def has_events(self) -> bool:
        return bool(self._queue)

    def next_slot(self) -> int | None:
        return min(self._queue) if self._queue else None

    # -- propagation ---------------------------------------------------

    def process_next_slot(
        self, receiver_mask: Callable[[np.ndarray], np.ndarray] | None = None
    ) -> tuple[int, list[Decode]]:
        """Transmit everything due in the earliest slot; return decodes.

        ``receiver_mask`` may prune candidate receivers (nodes the
        protocol knows cannot care); pruning never affects interference,
        which always comes from the full transmitter set.
        """
        slot = self.next_slot()
        if slot is None:
            raise RuntimeError("no pending transmissions")
        txs = sorted(self._queue.pop(slot), key=lambda t: (t.uid, t.node))

        # One packet per node per slot; extras slip to the next slot.
        seen_nodes: set[int] = set()
        ready: list[Transmission] = []
        for t in txs:
            if t.node in seen_nodes:
                self._queue.setdefault(slot + 1, []).append(t)
            else:
                seen_nodes.add(t.node)
                ready.append(t)
        if not ready:
            return slot, []

        self.slots_processed += 1
        self.last_slot = slot
        for t in ready:
            self.tx_count[t.node] += 1
            self.transmitters_by_uid.setdefault(t.uid, set()).add(t.node)

        tx_ids = np.array([t.node for t in ready], dtype=np.int64)
        rx_ids = self._candidate_receivers(tx_ids, receiver_mask)
        if rx_ids.size == 0:
            return slot, []

        power_lin = self._power_matrix(ready, tx_ids, rx_ids)
        if self.cfg.interference_enabled:
            decodes = self._capture_decodes(ready, rx_ids, power_lin)
        else:
            decodes = self._independent_decodes(ready, rx_ids, power_lin)
        return slot, decodes

    def _candidate_receivers(
        self,
        tx_ids: np.ndarray,
        receiver_mask: Callable[[np.ndarray], np.ndarray] | None,
    ) -> np.ndarray:
        nx, ny, nz = self.field.shape
        pts = self.field.lattice[tx_ids][:, None, :] + self._offsets[None, :, :]
        pts = pts.reshape(-1, 3)
        ok = (
            (pts[:, 0] >= 0) & (pts[:, 0] < nx)
            & (pts[:, 1] >= 0) & (pts[:, 1] < ny)
            & (pts[:, 2] >= 0) & (pts[:, 2] < nz)
        )
        pts = pts[ok]
        flat = (pts[:, 0] * ny + pts[:, 1]) * nz + pts[:, 2]
        cand = np.unique(flat)
        cand = cand[self.field.active[cand]]
        transmitting = np.zeros(self.field.node_count, dtype=bool)
        transmitting[tx_ids] = True
        cand = cand[~transmitting[cand]]
        if receiver_mask is not None and cand.size:
            cand = cand[receiver_mask(cand)]
        return cand

    def _power_matrix(
        self, ready: list[Transmission], tx_ids: np.ndarray, rx_ids: np.ndarray
    ) -> np.ndarray:
        tx_pos = self.field.positions[tx_ids]
        rx_pos = self.field.positions[rx_ids]
        d2 = (
            (tx_pos**2).sum(1)[:, None]
            + (rx_pos**2).sum(1)[None, :]
            - 2.0 * (tx_pos @ rx_pos.T)
        )
        dist = np.sqrt(np.maximum(d2, 0.0))

        if self.cfg.shadow_sigma_dB > 0.0:
            row_keys = np.array(
                [key_hash(self.cfg.seed, SALT_SHADOW, t.uid, t.node) for t in ready],
                dtype=np.uint64,
            )
            with np.errstate(over="ignore"):
                base = _mix64_np(
                    row_keys[:, None] ^ _mix64_np(rx_ids.astype(np.uint64))[None, :]
                )
                u1 = uniform01_np(_mix64_np(base ^ np.uint64(1)))
                u2 = uniform01_np(_mix64_np(base ^ np.uint64(2)))
            shadow = self.cfg.shadow_sigma_dB * np.sqrt(-2.0 * np.log(u1)) * np.cos(
                2.0 * np.pi * u2
            )
        else:
            shadow = 0.0

        power_dB = received_power_dBnW_np(dist, self.cfg, shadow)
        return 10.0 ** (power_dB / 10.0)

    def _capture_decodes(
        self, ready: list[Transmission], rx_ids: np.ndarray, power_lin: np.ndarray
    ) -> list[Decode]:
        # Group rows by packet content; copies of one content combine.
        contents: dict[tuple[int, int], list[int]] = {}
        for row, t in enumerate(ready):
            contents.setdefault((t.uid, t.tag), []).append(row)
        keys = sorted(contents)
        combined = np.stack(
            [power_lin[contents[k]].sum(axis=0) for k in keys], axis=0
        )
        total = combined.sum(axis=0)
        best = combined.argmax(axis=0)
        cols = np.arange(rx_ids.size)
        signal = combined[best, cols]
        interference = total - signal
        ok = signal >= self._thr_lin * (self._noise_lin + interference)
        decodes = []
        for col in np.flatnonzero(ok):
            rows = contents[keys[best[col]]]
            strongest = rows[int(power_lin[rows, col].argmax())]
            t = ready[strongest]
            decodes.append(Decode(int(rx_ids[col]), t.node, t.uid, t.tag))
        return decodes

    def _independent_decodes(
        self, ready: list[Transmission], rx_ids: np.ndarray, power_lin: np.ndarray
    ) -> list[Decode]:
        # No cross-content interference: every content is evaluated against
        # noise alone (copies still combine), and a receiver may decode
        # several different contents in one slot.
        contents: dict[tuple[int, int], list[int]] = {}
        for row, t in enumerate(ready):
            contents.setdefault((t.uid, t.tag), []).append(row)
        decodes = []
        for key in sorted(contents):
            rows = contents[key]
            combined = power_lin[rows].sum(axis=0)
            ok = combined >= self._thr_lin * self._noise_lin
            for col in np.flatnonzero(ok):
                strongest = rows[int(power_lin[rows, col].argmax())]
                t = ready[strongest]
                decodes.append(Decode(int(rx_ids[col]), t.node, t.uid, t.tag))
        decodes.sort(key=lambda d: (d.rx, d.uid))
        return decodes


def _lattice_offsets(radius_in_spacings: float) -> np.ndarray:
    """Integer lattice offsets within the listen radius (excluding 0)."""
    r = int(math.floor(radius_in_spacings))
    axis = np.arange(-r, r + 1)
    dx, dy, dz = np.meshgrid(axis, axis, axis, indexing="ij")
    offs = np.stack([dx.ravel(), dy.ravel(), dz.ravel()], axis=1)
    norm2 = (offs**2).sum(1)
    keep = (norm2 > 0) & (norm2 <= radius_in_spacings**2)
    return offs[keep].astype(np.int64)
