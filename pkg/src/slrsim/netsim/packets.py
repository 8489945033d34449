"""Wire formats for setup and data packets.

Setup packets: setup flag (1 bit, =1), anchor index (3 bits, stored as
index-1), hop count (16 bits) -- 20 bits, padded to 3 bytes.

Data packets: setup flag (1 bit, =0), packet id (8 bits), coordinate
system (3 anchor indices x 3 bits), usable addresses of both endpoints
(3 x 8-bit hop counts each), path width m (4 bits), then the payload
bytes -- a 9-byte header. Bits are packed MSB-first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..coords import UsableAddress, Viewport

SETUP_PACKET_LEN = 3
DATA_HEADER_LEN = 9


def _pack_bits(fields: list[tuple[int, int]]) -> bytes:
    acc = 0
    nbits = 0
    for value, width in fields:
        if not 0 <= value < (1 << width):
            raise ValueError(f"value {value} does not fit in {width} bits")
        acc = (acc << width) | value
        nbits += width
    pad = (-nbits) % 8
    acc <<= pad
    return acc.to_bytes((nbits + pad) // 8, "big")


class _BitReader:
    def __init__(self, data: bytes) -> None:
        self._acc = int.from_bytes(data, "big")
        self._left = len(data) * 8

    def take(self, width: int) -> int:
        self._left -= width
        return (self._acc >> self._left) & ((1 << width) - 1)


@dataclass(frozen=True)
class SetupPacket:
    anchor_index: int
    hop_count: int

    def __post_init__(self) -> None:
        if not 1 <= self.anchor_index <= 8:
            raise ValueError(f"anchor index out of range: {self.anchor_index}")
        if not 0 <= self.hop_count < 2**16:
            raise ValueError(f"hop count does not fit in 16 bits: {self.hop_count}")

    def pack(self) -> bytes:
        return _pack_bits([
            (1, 1),
            (self.anchor_index - 1, 3),
            (self.hop_count, 16),
        ])

    @classmethod
    def unpack(cls, data: bytes) -> "SetupPacket":
        if len(data) != SETUP_PACKET_LEN:
            raise ValueError(f"setup packet must be {SETUP_PACKET_LEN} bytes")
        r = _BitReader(data)
        if r.take(1) != 1:
            raise ValueError("setup flag not set")
        return cls(anchor_index=r.take(3) + 1, hop_count=r.take(16))


@dataclass(frozen=True)
class DataPacket:
    packet_id: int
    cs: Viewport
    ua1: UsableAddress
    ua2: UsableAddress
    m: int
    payload: bytes = field(default=b"")

    def __post_init__(self) -> None:
        if not 0 <= self.packet_id < 256:
            raise ValueError(f"packet id does not fit in 8 bits: {self.packet_id}")
        if not 1 <= self.m <= 15:
            raise ValueError(f"m must fit the 4-bit header field (1..15), got {self.m}")
        for ua in (self.ua1, self.ua2):
            if max(ua.as_tuple()) > 255:
                raise ValueError(f"hop count does not fit in 8 bits: {ua}")

    def pack(self) -> bytes:
        fields: list[tuple[int, int]] = [(0, 1), (self.packet_id, 8)]
        fields += [(a - 1, 3) for a in self.cs.anchors]
        fields += [(r, 8) for r in self.ua1.as_tuple()]
        fields += [(r, 8) for r in self.ua2.as_tuple()]
        fields.append((self.m, 4))
        return _pack_bits(fields) + self.payload

    @classmethod
    def unpack(cls, data: bytes) -> "DataPacket":
        if len(data) < DATA_HEADER_LEN:
            raise ValueError(f"data packet header is {DATA_HEADER_LEN} bytes")
        r = _BitReader(data[:DATA_HEADER_LEN])
        if r.take(1) != 0:
            raise ValueError("setup flag set on a data packet")
        packet_id = r.take(8)
        cs = Viewport(r.take(3) + 1, r.take(3) + 1, r.take(3) + 1)
        ua1 = UsableAddress(r.take(8), r.take(8), r.take(8))
        ua2 = UsableAddress(r.take(8), r.take(8), r.take(8))
        m = r.take(4)
        return cls(packet_id, cs, ua1, ua2, m, data[DATA_HEADER_LEN:])
