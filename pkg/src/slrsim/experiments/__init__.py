"""Experiment harness: scenarios, drivers, reports, CLI."""

from .report import Report, write_manifest
from .runs import (
    eval_network_efficiency,
    eval_parallel_pairs,
    eval_viewport_selection,
    run_experiment,
    run_scenario,
)
from .scenario import (
    ConfigError,
    ScenarioSpec,
    apply_overrides,
    parse_config_text,
    preset_scenario,
)

__all__ = [
    "Report",
    "write_manifest",
    "ScenarioSpec",
    "ConfigError",
    "parse_config_text",
    "apply_overrides",
    "preset_scenario",
    "eval_viewport_selection",
    "eval_network_efficiency",
    "eval_parallel_pairs",
    "run_experiment",
    "run_scenario",
]
