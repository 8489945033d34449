"""Node field construction and address bookkeeping.

Nodes live on a regular lattice spanning the network space; the eight
lattice corners are the anchors and are never deactivated. The random
layout is the same lattice with a seeded random subset of non-anchor
nodes deactivated. Addresses are hop-count rows (one column per
anchor, -1 until the setup flood fills them in).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from ..coords import (
    ANCHOR_CORNERS,
    CartesianPos,
    HopAddress,
    SpaceDims,
    UsableAddress,
    Viewport,
    enumerate_viewports,
)
from .config import SimConfig
from .rng import SALT_DEACTIVATE, derive_seed

SNAPSHOT_COLUMNS = ("id", "x", "y", "z", "active",
                    "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8")


@dataclass
class Node:
    """Object view of one simulated node."""

    id: int
    pos: CartesianPos
    active: bool
    address: HopAddress
    seen_ids: set[int] = dc_field(default_factory=set)

    @property
    def addressed(self) -> bool:
        return self.address.complete


class Field:
    """The simulated node population, array-backed for the hot loops."""

    def __init__(self, cfg: SimConfig, shape: tuple[int, int, int]) -> None:
        self.cfg = cfg
        self.dims = cfg.dims
        self.spacing = cfg.grid_spacing
        self.shape = shape
        nx, ny, nz = shape
        n = nx * ny * nz
        ii, jj, kk = np.meshgrid(
            np.arange(nx), np.arange(ny), np.arange(nz), indexing="ij"
        )
        self.lattice = np.stack(
            [ii.ravel(), jj.ravel(), kk.ravel()], axis=1
        ).astype(np.int64)
        self.positions = self.lattice.astype(np.float64) * self.spacing
        self.active = np.ones(n, dtype=bool)
        self.addresses = np.full((n, 8), -1, dtype=np.int32)
        self.anchor_ids = tuple(
            self.flat_index(cx * (nx - 1), cy * (ny - 1), cz * (nz - 1))
            for cx, cy, cz in ANCHOR_CORNERS
        )
        for a, node_id in enumerate(self.anchor_ids):
            self.addresses[node_id, a] = 0

    @property
    def node_count(self) -> int:
        return self.positions.shape[0]

    def flat_index(self, i: int, j: int, k: int) -> int:
        _, ny, nz = self.shape
        return (i * ny + j) * nz + k

    def is_anchor(self, node_id: int) -> bool:
        return node_id in self.anchor_ids

    def position(self, node_id: int) -> CartesianPos:
        x, y, z = self.positions[node_id]
        return CartesianPos(float(x), float(y), float(z))

    def address(self, node_id: int) -> HopAddress:
        row = self.addresses[node_id]
        return HopAddress(tuple(int(v) if v >= 0 else None for v in row))

    def address_complete(self, node_id: int) -> bool:
        return bool((self.addresses[node_id] >= 0).all())

    def node(self, node_id: int) -> Node:
        return Node(
            id=node_id,
            pos=self.position(node_id),
            active=bool(self.active[node_id]),
            address=self.address(node_id),
        )

    def active_ids(self) -> np.ndarray:
        return np.flatnonzero(self.active)

    def addressed_ids(self) -> np.ndarray:
        """Active nodes holding a complete 8-anchor address."""
        complete = (self.addresses >= 0).all(axis=1)
        return np.flatnonzero(self.active & complete)

    def zone_key(self, node_id: int) -> tuple[int, ...]:
        """Full-address zone identity (nodes sharing it share a zone)."""
        return tuple(int(v) for v in self.addresses[node_id])

    def usable_address(self, node_id: int, vp: Viewport) -> UsableAddress | None:
        vals = [int(self.addresses[node_id, a - 1]) for a in vp.anchors]
        if min(vals) < 0:
            return None
        return UsableAddress(*vals)

    def zone_population(self, vp: Viewport) -> dict[UsableAddress, int]:
        """Active-node population of every zone under one viewport."""
        table: dict[UsableAddress, int] = {}
        cols = [a - 1 for a in vp.anchors]
        sub = self.addresses[:, cols]
        ok = self.active & (sub >= 0).all(axis=1)
        for row in sub[ok]:
            ua = UsableAddress(int(row[0]), int(row[1]), int(row[2]))
            table[ua] = table.get(ua, 0) + 1
        return table

    def zone_tables(self) -> dict[Viewport, dict[UsableAddress, int]]:
        """Population-weighted zone tables for all 24 viewports."""
        return {vp: self.zone_population(vp) for vp in enumerate_viewports()}


def build_field(cfg: SimConfig) -> Field:
    """Place the lattice, designate corner anchors, apply deactivation.

    The lattice spacing must tile each side length exactly so that the
    corner nodes coincide with the anchor corners. The configured
    node_count is advisory for grid layouts: the full lattice is placed
    and the actual count reported by the field.
    """
    shape = _lattice_shape(cfg.dims, cfg.grid_spacing)
    field = Field(cfg, shape)

    k = int(cfg.deactivation_ratio * (field.node_count - 8))
    if k > 0:
        rng = random.Random(derive_seed(cfg.seed, SALT_DEACTIVATE))
        non_anchor = [i for i in range(field.node_count) if i not in field.anchor_ids]
        for node_id in rng.sample(non_anchor, k):
            field.active[node_id] = False
    return field


def _lattice_shape(dims: SpaceDims, spacing: float) -> tuple[int, int, int]:
    shape = []
    for length in (dims.x_len, dims.y_len, dims.z_len):
        steps = length / spacing
        if abs(steps - round(steps)) > 1e-9 * max(steps, 1.0):
            raise ValueError(
                f"grid_spacing {spacing} does not tile side length {length}"
            )
        shape.append(int(round(steps)) + 1)
    return (shape[0], shape[1], shape[2])


def write_snapshot(field: Field, path: str | Path) -> None:
    """One tab-separated record per node: id, position, active, r1..r8."""
    lines = ["\t".join(SNAPSHOT_COLUMNS)]
    for i in range(field.node_count):
        x, y, z = field.positions[i]
        row = [str(i), repr(float(x)), repr(float(y)), repr(float(z)),
               str(int(field.active[i]))]
        row += [str(int(v)) for v in field.addresses[i]]
        lines.append("\t".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_snapshot(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a snapshot back as (positions, active, addresses) arrays."""
    lines = Path(path).read_text().splitlines()
    header = tuple(lines[0].split("\t"))
    if header != SNAPSHOT_COLUMNS:
        raise ValueError(f"unexpected snapshot header: {header}")
    rows = [line.split("\t") for line in lines[1:]]
    positions = np.array([[float(r[1]), float(r[2]), float(r[3])] for r in rows])
    active = np.array([r[4] == "1" for r in rows], dtype=bool)
    addresses = np.array([[int(v) for v in r[5:13]] for r in rows], dtype=np.int32)
    return positions, active, addresses
