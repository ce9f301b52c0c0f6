"""Result persistence: CSVs, summary.json, per-figure plot data, figures.

All delimited output uses comma separators, dot decimals, and a header row;
floats are written with repr for lossless round-trips.  Every numeric output
is a pure function of (config, master_seed) except elapsed_seconds, which
lives only in records.json.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from . import __version__
from .harness import ExperimentConfig, RunRecord, SummaryStats, SweepRow, summarize
from .plots import (
    LOG_FLOOR,
    render_distance_profile,
    render_loss_trajectories,
    render_sweep,
)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def emit_reports(
    records: list[RunRecord],
    stats: SummaryStats,
    config: ExperimentConfig,
    output_dir: str | Path,
) -> dict[str, Path]:
    """Write every report artifact for one finished experiment."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    plotdata = out / "plotdata"
    plotdata.mkdir(exist_ok=True)
    figures = out / "figures"
    figures.mkdir(exist_ok=True)
    paths: dict[str, Path] = {}
    # Location-independent echo: runs land in fresh timestamped directories,
    # so embedding the path would break byte-level reproducibility.
    config_echo = {**config.to_dict(), "output_dir": None}

    rows = [
        (r.attempt, i, repr(v))
        for r in records
        if not r.failed and r.trajectory is not None
        for i, v in r.trajectory.evaluations
    ]
    paths["loss_trajectory"] = out / "loss_trajectory.csv"
    _write_csv(paths["loss_trajectory"], ["attempt", "evaluation_index", "loss"], rows)

    rows = [
        (r.attempt, m, repr(float(d)))
        for r in records
        if not r.failed and r.test_distances is not None
        for m, d in enumerate(r.test_distances)
    ]
    paths["test_distances"] = out / "test_distances.csv"
    _write_csv(paths["test_distances"], ["attempt", "point_index", "distance"], rows)

    # Self-contained: carries the config echo so `report` can rebuild
    # everything from this one file.
    paths["records"] = out / "records.json"
    with paths["records"].open("w", encoding="utf-8") as fh:
        json.dump(
            {"config": config_echo, "records": [r.to_dict() for r in records]},
            fh,
            indent=2,
        )

    summary = {
        "config": config_echo,
        "stats": stats.to_dict(),
        "attempt_totals": [r.test_total for r in records],
        "seeds": [r.seed for r in records],
        "correct_counts": [r.correct_count for r in records],
        "failed_attempts": [
            {"attempt": r.attempt, "error": r.error} for r in records if r.failed
        ],
        "version": __version__,
    }
    paths["summary"] = out / "summary.json"
    with paths["summary"].open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, ensure_ascii=False)

    # Per-figure data: trial vs loss, and point index vs log10 distances.
    rows = [
        (r.attempt, i, repr(v))
        for r in records
        if not r.failed and r.trajectory is not None
        for i, v in r.trajectory.evaluations
    ]
    paths["plot_loss"] = plotdata / "loss_vs_trials.csv"
    _write_csv(paths["plot_loss"], ["attempt", "trial", "loss"], rows)

    distances = np.array(
        [r.test_distances for r in records if not r.failed and r.test_distances is not None]
    )
    profile_rows = []
    if distances.size:
        floored = np.maximum(distances, LOG_FLOOR)
        log_avg = np.log10(floored.mean(axis=0))
        log_med = np.log10(np.median(floored, axis=0))
        profile_rows = [
            (m, repr(float(a)), repr(float(d)))
            for m, (a, d) in enumerate(zip(log_avg, log_med))
        ]
    paths["plot_profile"] = plotdata / "test_distance_profile.csv"
    _write_csv(
        paths["plot_profile"],
        ["point_index", "log10_average", "log10_median"],
        profile_rows,
    )

    paths["fig_loss"] = figures / "loss_trajectories.png"
    render_loss_trajectories(records, paths["fig_loss"])
    paths["fig_profile"] = figures / "test_distance_profile.png"
    render_distance_profile(records, paths["fig_profile"])
    return paths


def emit_sweep_reports(
    rows: list[SweepRow], config: ExperimentConfig, output_dir: str | Path
) -> dict[str, Path]:
    """Sweep table (CSV) and the layers-vs-distance / layers-vs-time figure."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"sweep": out / "sweep.csv"}
    _write_csv(
        paths["sweep"],
        ["layers", "average", "median", "minimum", "maximum", "mean_elapsed_seconds"],
        [
            (
                row.num_layers,
                repr(row.stats.average),
                repr(row.stats.median),
                repr(row.stats.minimum),
                repr(row.stats.maximum),
                repr(row.mean_elapsed_seconds),
            )
            for row in rows
        ],
    )
    paths["fig_sweep"] = out / "figures" / "layer_sweep.png"
    paths["fig_sweep"].parent.mkdir(exist_ok=True)
    render_sweep(rows, paths["fig_sweep"])
    return paths


def load_run(output_dir: str | Path) -> tuple[list[RunRecord], ExperimentConfig]:
    """Read records and the config echo back from records.json."""
    with (Path(output_dir) / "records.json").open(encoding="utf-8") as fh:
        payload = json.load(fh)
    records = [RunRecord.from_dict(d) for d in payload["records"]]
    return records, ExperimentConfig.from_dict(payload["config"])


def regenerate_reports(output_dir: str | Path) -> dict[str, Path]:
    """Recompute statistics and rewrite every artifact from records.json."""
    records, config = load_run(output_dir)
    stats = summarize(records)
    return emit_reports(records, stats, config, output_dir)
