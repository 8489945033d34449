"""Discrete-event network simulator: fields, channel, flood, exchange."""

from .channel import (
    calibration_summary,
    deterministic_reach,
    link_success,
    path_loss_dB,
    received_power_dBnW,
)
from .config import SimConfig, desk_grid_config, paper_grid_config
from .engine import SlotEngine
from .exchange import ExchangeReport, PairOutcome, Scheme, run_data_exchange
from .field import Field, Node, build_field, read_snapshot, write_snapshot
from .flood import FloodStats, run_setup_flood
from .packets import DataPacket, SetupPacket

__all__ = [
    "SimConfig",
    "desk_grid_config",
    "paper_grid_config",
    "Field",
    "Node",
    "build_field",
    "write_snapshot",
    "read_snapshot",
    "SlotEngine",
    "FloodStats",
    "run_setup_flood",
    "Scheme",
    "PairOutcome",
    "ExchangeReport",
    "run_data_exchange",
    "SetupPacket",
    "DataPacket",
    "path_loss_dB",
    "received_power_dBnW",
    "link_success",
    "deterministic_reach",
    "calibration_summary",
]
