"""Tabular run reports: canonical CSV plus a run manifest.

Rows are written in one flat schema. ``kind`` is ``sample`` for
per-measurement rows and ``summary`` for aggregate rows (``stat`` then
names the statistic: mean, min, q1, median, q3, max). Rows are sorted
canonically before writing so reruns and concurrent aggregation give
byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import statistics
from dataclasses import dataclass, field
from pathlib import Path

COLUMNS = (
    "kind", "experiment", "metric", "scheme", "selector", "prioritization",
    "m", "deactivation", "pair_count", "repetition", "cycle", "pair_index",
    "stat", "value",
)


def fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


@dataclass
class Report:
    experiment: str
    rows: list[dict] = field(default_factory=list)

    def add(self, *, kind: str = "sample", metric: str, value, **cells) -> None:
        row = {c: "" for c in COLUMNS}
        row["kind"] = kind
        row["experiment"] = self.experiment
        row["metric"] = metric
        row["value"] = fmt(value)
        for key, cell in cells.items():
            if key not in row:
                raise KeyError(f"unknown report column {key!r}")
            row[key] = fmt(cell)
        self.rows.append(row)

    def add_boxplot(self, values: list[float], *, metric: str, **cells) -> None:
        """Summary rows reproducing a boxplot: min/q1/median/q3/max."""
        data = sorted(values)
        q1, _, q3 = statistics.quantiles(data, n=4, method="inclusive") if len(data) > 1 else (data[0],) * 3
        stats = {
            "min": data[0],
            "q1": q1,
            "median": statistics.median(data),
            "q3": q3,
            "max": data[-1],
        }
        for stat, value in stats.items():
            self.add(kind="summary", metric=metric, value=value, stat=stat, **cells)

    def add_mean(self, values: list[float], *, metric: str, **cells) -> None:
        self.add(kind="summary", metric=metric, value=statistics.fmean(values),
                 stat="mean", **cells)

    def sorted_rows(self) -> list[dict]:
        return sorted(self.rows, key=lambda r: tuple(r[c] for c in COLUMNS))

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(self.sorted_rows())

    def values(self, **match) -> list[float]:
        """Pull values of rows matching the given cells (testing helper)."""
        out = []
        for row in self.sorted_rows():
            if all(row[k] == fmt(v) for k, v in match.items()):
                out.append(float(row["value"]))
        return out


def config_digest(config_text: str) -> str:
    return hashlib.sha256(config_text.encode()).hexdigest()


def write_manifest(
    path: str | Path, *, experiment: str, seed: int, config_text: str,
    report_rows: int, version: str
) -> None:
    lines = [
        f"config_sha256={config_digest(config_text)}",
        f"experiment={experiment}",
        f"report_rows={report_rows}",
        f"seed={seed}",
        f"software_version={version}",
    ]
    Path(path).write_text("\n".join(lines) + "\n")
