"""Scenario specifications, presets, and the config-file format.

Config files are flat ``key = value`` text; ``#`` starts a comment.
Keys mirror the scenario and simulator field names (see README for the
schema). List-valued keys take comma-separated entries.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..coords import SpaceDims
from ..netsim.config import SimConfig, desk_grid_config, paper_grid_config
from ..viewport import Prioritization

EXPERIMENTS = ("viewport_eval", "network_eval", "parallel_pairs")
PRESETS = ("desk", "paper")


class ConfigError(ValueError):
    """A scenario config is malformed; the message names the field."""


@dataclass(frozen=True)
class ScenarioSpec:
    sim: SimConfig
    experiment: str
    pair_count: int  # pairs per cycle (network/parallel) or per repetition (viewport)
    cycles: int
    interarrival_s: float
    repetitions: int
    m_values: tuple[int, ...]
    deactivation_sweep: tuple[float, ...]
    prioritization: Prioritization = Prioritization.RESOLUTION

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"experiment: unknown value {self.experiment!r}; "
                f"expected one of {', '.join(EXPERIMENTS)}"
            )
        if self.pair_count < 1:
            raise ConfigError("pair_count: must be >= 1")
        if self.cycles < 1:
            raise ConfigError("cycles: must be >= 1")
        if self.repetitions < 1:
            raise ConfigError("repetitions: must be >= 1")
        if not self.m_values or any(m < 1 for m in self.m_values):
            raise ConfigError("m_values: need at least one width >= 1")
        if any(not 0.0 <= d < 1.0 for d in self.deactivation_sweep):
            raise ConfigError("deactivation_sweep: ratios must be in [0, 1)")


def desk_scenario(experiment: str, seed: int = 1) -> ScenarioSpec:
    """CI-speed preset: 9^3 grid, 20 pairs, 20 repetitions."""
    sim = desk_grid_config(seed=seed)
    if experiment == "viewport_eval":
        return ScenarioSpec(sim, experiment, pair_count=20, cycles=1,
                            interarrival_s=10.0, repetitions=1,
                            m_values=(1, 2, 3), deactivation_sweep=(0.0,))
    if experiment == "network_eval":
        return ScenarioSpec(sim, experiment, pair_count=5, cycles=4,
                            interarrival_s=10.0, repetitions=20,
                            m_values=(1, 2, 3),
                            deactivation_sweep=(0.0, 0.3, 0.6, 0.9))
    return ScenarioSpec(sim, experiment, pair_count=10, cycles=20,
                        interarrival_s=10.0, repetitions=1,
                        m_values=(1,), deactivation_sweep=(0.0,))


def paper_scenario(experiment: str, seed: int = 1) -> ScenarioSpec:
    """Full-scale preset mirroring the reference configuration."""
    sim = paper_grid_config(seed=seed)
    if experiment == "viewport_eval":
        return ScenarioSpec(sim, experiment, pair_count=100, cycles=1,
                            interarrival_s=10.0, repetitions=1,
                            m_values=(1, 2, 3), deactivation_sweep=(0.0,))
    if experiment == "network_eval":
        return ScenarioSpec(sim, experiment, pair_count=5, cycles=100,
                            interarrival_s=10.0, repetitions=100,
                            m_values=(1, 2, 3),
                            deactivation_sweep=(0.0, 0.3, 0.6, 0.9))
    return ScenarioSpec(sim, experiment, pair_count=10, cycles=100,
                        interarrival_s=10.0, repetitions=1,
                        m_values=(1,), deactivation_sweep=(0.0,))


def preset_scenario(preset: str, experiment: str, seed: int = 1) -> ScenarioSpec:
    if preset not in PRESETS:
        raise ConfigError(f"preset: unknown value {preset!r}; expected desk or paper")
    return desk_scenario(experiment, seed) if preset == "desk" else paper_scenario(experiment, seed)


# Config-file keys and their parsers.

def _parse_bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _parse_int_list(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.replace(",", " ").split())


def _parse_float_list(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in s.replace(",", " ").split())


_SIM_KEYS = {
    "node_count": int,
    "placement": str,
    "grid_spacing": float,
    "frequency_hz": float,
    "tx_power_dBnW": float,
    "noise_dBnW": float,
    "sinr_threshold_dB": float,
    "guard_interval_s": float,
    "packet_duration_s": float,
    "absorption_K_dB_per_km": float,
    "shadow_sigma_dB": float,
    "deactivation_ratio": float,
    "seed": int,
    "link_gain_dB": float,
    "backoff_slots": int,
    "interference_enabled": _parse_bool,
}

_DIM_KEYS = {"x_len": float, "y_len": float, "z_len": float}

_SCENARIO_KEYS = {
    "experiment": str,
    "pair_count": int,
    "cycles": int,
    "interarrival_s": float,
    "repetitions": int,
    "m_values": _parse_int_list,
    "deactivation_sweep": _parse_float_list,
    "prioritization": str,
}


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a typed overrides mapping."""
    overrides: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        parser = _SIM_KEYS.get(key) or _DIM_KEYS.get(key) or _SCENARIO_KEYS.get(key)
        if parser is None:
            raise ConfigError(f"{key}: unknown config key")
        try:
            overrides[key] = parser(value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{key}: invalid value {value!r} ({exc})") from exc
    return overrides


def apply_overrides(base: ScenarioSpec, overrides: dict) -> ScenarioSpec:
    sim = base.sim
    sim_changes = {k: v for k, v in overrides.items() if k in _SIM_KEYS}
    dim_changes = {k: v for k, v in overrides.items() if k in _DIM_KEYS}
    if dim_changes:
        dims = SpaceDims(
            dim_changes.get("x_len", sim.dims.x_len),
            dim_changes.get("y_len", sim.dims.y_len),
            dim_changes.get("z_len", sim.dims.z_len),
        )
        sim_changes["dims"] = dims
    if sim_changes:
        try:
            sim = sim.with_(**sim_changes)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    spec_changes: dict = {"sim": sim}
    for key in _SCENARIO_KEYS:
        if key not in overrides:
            continue
        value = overrides[key]
        if key == "prioritization":
            try:
                value = Prioritization(value)
            except ValueError as exc:
                raise ConfigError(
                    f"prioritization: unknown value {value!r}; "
                    "expected resolution or distance"
                ) from exc
        spec_changes[key] = value
    return replace(base, **spec_changes)
