"""Figure rendering for the report path.  File output only (Agg backend)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150
LOG_FLOOR = 1e-16  # distances of 0 would otherwise break the log axis


def render_loss_trajectories(records, path: str | Path) -> None:
    """Evaluation index vs training loss, one line per attempt."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for record in records:
        if record.failed or record.trajectory is None:
            continue
        if not record.trajectory.evaluations:
            continue
        idx, vals = zip(*record.trajectory.evaluations)
        ax.plot(idx, vals, linewidth=0.8, label=f"attempt {record.attempt}")
    ax.set_xlabel("number of trials")
    ax.set_ylabel("loss")
    ax.legend(fontsize=7, ncol=2)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)


def render_distance_profile(records, path: str | Path) -> None:
    """Test point index vs log10 of the average / median absolute distance."""
    distances = np.array(
        [r.test_distances for r in records if not r.failed and r.test_distances is not None]
    )
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if distances.size:
        floored = np.maximum(distances, LOG_FLOOR)
        idx = np.arange(distances.shape[1])
        ax.plot(idx, np.log10(floored.mean(axis=0)), label="average", linewidth=1.0)
        ax.plot(
            idx,
            np.log10(np.median(floored, axis=0)),
            label="median",
            linewidth=1.0,
            linestyle="--",
        )
        ax.legend()
    ax.set_xlabel("test point index")
    ax.set_ylabel("log10 absolute distance")
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)


def render_sweep(rows, path: str | Path) -> None:
    """Layer count vs mean total distance, with elapsed time alongside."""
    layers = [row.num_layers for row in rows]
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    ax0.plot(layers, [row.stats.average for row in rows], marker="o")
    ax0.set_xlabel("number of layers")
    ax0.set_ylabel("sum of absolute distances (mean)")
    ax1.plot(layers, [row.mean_elapsed_seconds for row in rows], marker="o")
    ax1.set_xlabel("number of layers")
    ax1.set_ylabel("elapsed seconds (mean)")
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
