"""The experiment drivers.

Three scenarios: viewport-selection efficiency (static retransmitter
counts of the heuristic/optimal/random selectors), network efficiency
(success and retransmitter ratios under node deactivation and path
width), and parallel-pairs load (per-node transmissions, both schemes).

Every random quantity derives from the scenario seed, so a rerun with
the same config is byte-identical. The addressing flood always runs
under the full channel model; the sim config's interference flag
governs data-packet propagation only.
"""

from __future__ import annotations

import random
from pathlib import Path

from .. import __version__
from ..netsim.exchange import Scheme, run_data_exchange
from ..netsim.field import Field, build_field
from ..netsim.flood import run_setup_flood
from ..netsim.rng import SALT_FIELD, SALT_IDS, SALT_PAIRS, derive_seed
from ..viewport import (
    Prioritization,
    retransmitter_counts,
    select_viewport,
)
from .report import Report, write_manifest
from .scenario import ConfigError, ScenarioSpec, apply_overrides, parse_config_text, preset_scenario

SELECTORS = ("optimal", "resolution", "distance", "random")


def _prepare_field(sim_cfg) -> Field:
    field = build_field(sim_cfg.with_(interference_enabled=True))
    run_setup_flood(field)
    return field


def _draw_pairs(field: Field, rng: random.Random, count: int) -> list[tuple[int, int]]:
    ids = [int(i) for i in field.addressed_ids()]
    if len(ids) < 2:
        return []
    return [tuple(rng.sample(ids, 2)) for _ in range(count)]


def eval_viewport_selection(spec: ScenarioSpec) -> Report:
    """Retransmitter counts per selector, relative to the brute-force optimal.

    All nodes are powered on: the scenario requires deactivation 0.
    Counts are node-weighted static memberships of the width-m band
    (zones weighted by their population); the random selector reports
    the exact mean over all 24 viewports.
    """
    if spec.experiment != "viewport_eval":
        raise ConfigError(f"experiment: expected viewport_eval, got {spec.experiment}")
    if spec.sim.deactivation_ratio != 0.0:
        raise ConfigError("deactivation_ratio: viewport_eval requires all nodes powered on (0.0)")

    field = _prepare_field(spec.sim)
    tables = field.zone_tables()
    report = Report(spec.experiment)
    excess: dict[tuple[str, int], list[float]] = {
        (sel, m): [] for sel in SELECTORS for m in spec.m_values
    }

    for rep in range(spec.repetitions):
        rng = random.Random(derive_seed(spec.sim.seed, SALT_PAIRS, rep))
        pairs = _draw_pairs(field, rng, spec.pair_count)
        for pair_index, (sender, recipient) in enumerate(pairs):
            addr1, addr2 = field.address(sender), field.address(recipient)
            res_vp = select_viewport(addr1, addr2, Prioritization.RESOLUTION).vp
            dist_vp = select_viewport(addr1, addr2, Prioritization.DISTANCE).vp
            for m in spec.m_values:
                counts = retransmitter_counts(addr1, addr2, tables, m)
                optimal = min(counts.values())
                chosen = {
                    "optimal": float(optimal),
                    "resolution": float(counts[res_vp]),
                    "distance": float(counts[dist_vp]),
                    "random": sum(counts.values()) / len(counts),
                }
                for sel, count in chosen.items():
                    rel = (count - optimal) / optimal
                    excess[(sel, m)].append(rel)
                    cells = dict(selector=sel, m=m, repetition=rep, pair_index=pair_index)
                    report.add(metric="retransmitters", value=count, **cells)
                    report.add(metric="relative_excess", value=rel, **cells)

    for (sel, m), values in excess.items():
        if values:
            report.add_boxplot(values, metric="relative_excess", selector=sel, m=m)
    return report


def eval_network_efficiency(spec: ScenarioSpec) -> Report:
    """Success ratio and retransmitter share across the deactivation sweep.

    Each repetition re-randomizes node failures (fresh derived field
    seed), floods, then runs the configured cycles of concurrent pair
    exchanges for SLR at every path width and CORONA once (reported
    under m=0, since the baseline has no width parameter). A repetition
    whose flood leaves fewer than two addressed nodes counts as total
    outage (success 0, no retransmitters).
    """
    if spec.experiment != "network_eval":
        raise ConfigError(f"experiment: expected network_eval, got {spec.experiment}")
    report = Report(spec.experiment)
    schemes: list[tuple[Scheme, int]] = [(Scheme.SLR, m) for m in spec.m_values]
    schemes.append((Scheme.CORONA, 0))

    for d_index, deact in enumerate(spec.deactivation_sweep):
        sums: dict[tuple[str, int], tuple[list[float], list[float]]] = {
            (sch.value, m): ([], []) for sch, m in schemes
        }
        for rep in range(spec.repetitions):
            field_seed = derive_seed(spec.sim.seed, SALT_FIELD, d_index, rep)
            sim = spec.sim.with_(deactivation_ratio=deact, seed=field_seed)
            field = _prepare_field(sim)
            pair_sets = []
            for cycle in range(spec.cycles):
                rng = random.Random(derive_seed(spec.sim.seed, SALT_PAIRS, d_index, rep, cycle))
                pair_sets.append(_draw_pairs(field, rng, spec.pair_count))
            total_pairs = spec.cycles * spec.pair_count

            for scheme, m in schemes:
                delivered = 0
                retrans_share = 0.0
                width = m if scheme is Scheme.SLR else 1
                for cycle, pairs in enumerate(pair_sets):
                    if not pairs:
                        continue
                    ids_rng = random.Random(
                        derive_seed(spec.sim.seed, SALT_IDS, d_index, rep, cycle)
                    )
                    result = run_data_exchange(
                        field, pairs, scheme, width, spec.prioritization,
                        cfg=sim.with_(interference_enabled=spec.sim.interference_enabled),
                        rng=ids_rng,
                    )
                    delivered += result.delivered_count
                    retrans_share += sum(
                        o.retransmitters for o in result.outcomes
                    ) / result.active_nodes
                success = delivered / total_pairs
                retrans_pct = retrans_share / total_pairs * 100.0
                key = (scheme.value, m)
                sums[key][0].append(success)
                sums[key][1].append(retrans_pct)
                cells = dict(scheme=scheme.value, m=m, deactivation=deact, repetition=rep)
                report.add(metric="success_ratio", value=success, **cells)
                report.add(metric="retransmitter_pct", value=retrans_pct, **cells)

        for (scheme, m), (succ, retr) in sums.items():
            cells = dict(scheme=scheme, m=m, deactivation=deact)
            report.add_mean(succ, metric="success_ratio", **cells)
            report.add_mean(retr, metric="retransmitter_pct", **cells)
    return report


def eval_parallel_pairs(spec: ScenarioSpec) -> Report:
    """Per-node transmission load versus the number of concurrent pairs.

    Pair sets are nested per cycle (the p-pair run uses the first p of
    that cycle's drawn pairs), so load comparisons across pair counts
    are matched. Width is the first configured m; deactivation must be
    zero.
    """
    if spec.experiment != "parallel_pairs":
        raise ConfigError(f"experiment: expected parallel_pairs, got {spec.experiment}")
    if spec.sim.deactivation_ratio != 0.0:
        raise ConfigError("deactivation_ratio: parallel_pairs requires 0.0")
    m = spec.m_values[0]
    field = _prepare_field(spec.sim)
    report = Report(spec.experiment)

    cycle_pairs = []
    for cycle in range(spec.cycles):
        rng = random.Random(derive_seed(spec.sim.seed, SALT_PAIRS, cycle))
        cycle_pairs.append(_draw_pairs(field, rng, spec.pair_count))

    for scheme in (Scheme.SLR, Scheme.CORONA):
        for p in range(1, spec.pair_count + 1):
            loads = []
            for cycle, pairs in enumerate(cycle_pairs):
                ids_rng = random.Random(derive_seed(spec.sim.seed, SALT_IDS, cycle))
                result = run_data_exchange(
                    field, pairs[:p], scheme, m, spec.prioritization, rng=ids_rng
                )
                load = result.total_transmissions / result.active_nodes
                loads.append(load)
                report.add(
                    metric="tx_per_node", value=load,
                    scheme=scheme.value, m=m, pair_count=p, cycle=cycle,
                )
            report.add_mean(loads, metric="tx_per_node",
                            scheme=scheme.value, m=m, pair_count=p)
    return report


_RUNNERS = {
    "viewport_eval": eval_viewport_selection,
    "network_eval": eval_network_efficiency,
    "parallel_pairs": eval_parallel_pairs,
}


def run_experiment(spec: ScenarioSpec) -> Report:
    return _RUNNERS[spec.experiment](spec)


def run_scenario(
    config_path: str | Path,
    out_dir: str | Path,
    seed: int | None = None,
    preset: str = "desk",
) -> tuple[Path, Path]:
    """Load a config file, run its experiment, write report + manifest.

    The config overlays the named preset; the experiment key selects
    the scenario. Returns the written (report.csv, manifest.txt) paths.
    """
    config_text = Path(config_path).read_text()
    overrides = parse_config_text(config_text)
    if "experiment" not in overrides:
        raise ConfigError("experiment: required key missing from config")
    base = preset_scenario(preset, overrides["experiment"],
                           seed=overrides.get("seed", 1))
    spec = apply_overrides(base, overrides)
    if seed is not None:
        spec = apply_overrides(spec, {"seed": seed})

    report = run_experiment(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / "report.csv"
    manifest_path = out / "manifest.txt"
    report.write_csv(report_path)
    write_manifest(
        manifest_path,
        experiment=spec.experiment,
        seed=spec.sim.seed,
        config_text=config_text,
        report_rows=len(report.rows),
        version=__version__,
    )
    return report_path, manifest_path
