"""Aggregate report records into the experiment's summary tables.

Mean and max solve fractions over seeds, the error-type breakdown split
by trial success, the solve-fraction-vs-debug-round curve (cumulative,
so non-decreasing), the tasks-used histogram, and a flag list of records
with fractional eval success (performance is expected to be
all-or-nothing; exceptions deserve inspection). Aggregation is
deterministic: identical records give byte-identical serialized tables.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .experiment import ReportRecord

ERROR_KINDS = ("python_exception", "plan_semantics", "plan_syntax", "timeout")


@dataclass(frozen=True)
class MetricsTable:
    solve_mean: dict[str, float]  # "domain/approach" -> mean over seeds
    solve_max: dict[str, float]
    error_percentages: dict[str, dict[str, float]]  # column -> kind -> pct
    error_counts: dict[str, dict[str, int]]
    debug_curve: tuple[float, ...]  # index = rounds allowed
    tasks_used_histogram: dict[int, int]
    fractional_records: tuple[tuple[str, int, str], ...]
    incomplete_cells: tuple[tuple[str, int, str], ...]
    runtime_samples: tuple = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "solve_mean": self.solve_mean,
                "solve_max": self.solve_max,
                "error_percentages": self.error_percentages,
                "error_counts": self.error_counts,
                "debug_curve": list(self.debug_curve),
                "tasks_used_histogram": {str(k): v for k, v in self.tasks_used_histogram.items()},
                "fractional_records": [list(r) for r in self.fractional_records],
                "incomplete_cells": [list(r) for r in self.incomplete_cells],
                "runtime_samples": [list(s) for s in self.runtime_samples],
            },
            sort_keys=True,
        )


def compute_metrics(records: list[ReportRecord], max_rounds: int = 4) -> MetricsTable:
    if not records:
        raise ValueError("no records to aggregate")
    complete = [r for r in records if r.incomplete is None]
    by_cell: dict[tuple[str, str], list[ReportRecord]] = {}
    for record in complete:
        by_cell.setdefault((record.domain, record.approach), []).append(record)

    solve_mean = {}
    solve_max = {}
    for (domain, approach), cell_records in sorted(by_cell.items()):
        fractions = [r.solve_fraction for r in cell_records]
        solve_mean[f"{domain}/{approach}"] = round(sum(fractions) / len(fractions), 4)
        solve_max[f"{domain}/{approach}"] = round(max(fractions), 4)

    counts = {"all": dict.fromkeys(ERROR_KINDS, 0), "success": dict.fromkeys(ERROR_KINDS, 0),
              "failure": dict.fromkeys(ERROR_KINDS, 0)}
    for record in complete:
        split = "success" if record.success else "failure"
        for _, _, kind in record.error_history:
            if kind in counts["all"]:
                counts["all"][kind] += 1
                counts[split][kind] += 1
    percentages = {}
    for column, kind_counts in counts.items():
        total = sum(kind_counts.values())
        percentages[column] = {
            kind: (round(100.0 * n / total, 1) if total else 0.0)
            for kind, n in kind_counts.items()
        }

    curve = []
    for allowed in range(max_rounds + 1):
        values = [r.solve_fraction if r.rounds_used <= allowed else 0.0 for r in complete]
        curve.append(round(sum(values) / len(values), 4) if values else 0.0)

    histogram: dict[int, int] = {}
    for record in complete:
        if record.tasks_used > 0:
            histogram[record.tasks_used] = histogram.get(record.tasks_used, 0) + 1

    fractional = tuple(
        (r.domain, r.seed, r.approach)
        for r in sorted(complete, key=lambda r: (r.domain, r.seed, r.approach))
        if 0.0 < r.solve_fraction < 1.0
    )
    incomplete = tuple(
        (r.domain, r.seed, r.approach)
        for r in sorted(records, key=lambda r: (r.domain, r.seed, r.approach))
        if r.incomplete is not None
    )
    return MetricsTable(
        solve_mean=solve_mean,
        solve_max=solve_max,
        error_percentages=percentages,
        error_counts=counts,
        debug_curve=tuple(curve),
        tasks_used_histogram=dict(sorted(histogram.items())),
        fractional_records=fractional,
        incomplete_cells=incomplete,
    )


def write_report(table: MetricsTable, out_dir: str | Path) -> list[Path]:
    """CSV per table plus the whole bundle as JSON."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def csv_path(name: str):
        path = out_dir / name
        written.append(path)
        return path

    with csv_path("solve_fractions.csv").open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["domain", "approach", "mean", "max"])
        for key in sorted(table.solve_mean):
            domain, approach = key.split("/")
            writer.writerow([domain, approach, table.solve_mean[key], table.solve_max[key]])

    with csv_path("error_types.csv").open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["error_type", "all", "success", "failure"])
        for kind in ERROR_KINDS:
            writer.writerow(
                [kind]
                + [table.error_percentages[col][kind] for col in ("all", "success", "failure")]
            )

    with csv_path("debug_curve.csv").open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["rounds_allowed", "solve_fraction"])
        for allowed, value in enumerate(table.debug_curve):
            writer.writerow([allowed, value])

    with csv_path("tasks_used.csv").open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["tasks_used", "count"])
        for used, count in table.tasks_used_histogram.items():
            writer.writerow([used, count])

    if table.runtime_samples:
        with csv_path("runtime.csv").open("w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["domain", "objects", "median_get_plan_s", "planner_median_s"])
            for sample in table.runtime_samples:
                writer.writerow(list(sample))

    bundle = out_dir / "metrics.json"
    bundle.write_text(table.to_json())
    written.append(bundle)
    return written
