"""Experiment orchestration: seeded multi-attempt runs and their statistics."""
from __future__ import annotations

import json
import statistics
import time
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .ansatz import EvqkanParams, LayerVector, forward
from .optimizer import OptimizerConfig, Trajectory, minimize
from .qnn import NUM_QUBITS as QNN_QUBITS
from .qnn import QnnParams, qnn_forward
from .qsim import DegenerateStateError, Observable, observable
from .spline import SplineGrid
from .tasks import TaskSpec, build_dataset, loss


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one multi-attempt run."""

    method: str  # "evqkan" | "qnn"
    task: TaskSpec
    num_layers: int = 3
    num_qubits: int = 3
    grid_size: int = 8
    attempts: int = 10
    master_seed: int = 42
    transposed: bool = False
    layer_chaining: str = "state_passing"  # | "re_encode"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    output_dir: str | None = None
    n_train: int = 10
    n_test: int = 50

    def __post_init__(self) -> None:
        if self.method not in ("evqkan", "qnn"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.layer_chaining not in ("state_passing", "re_encode"):
            raise ValueError(f"unknown chaining mode {self.layer_chaining!r}")
        if self.num_layers < 1 or self.attempts < 1:
            raise ValueError("num_layers and attempts must be >= 1")

    def attempt_seed(self, attempt: int) -> int:
        return self.master_seed + attempt

    def to_dict(self) -> dict:
        d = {
            "method": self.method,
            "task": {
                "kind": self.task.kind,
                "target_id": self.task.target_id,
                "dim": self.task.dim,
                "boundary_coeffs": (
                    list(self.task.boundary_coeffs)
                    if self.task.boundary_coeffs is not None
                    else None
                ),
                "normalization": self.task.normalization,
            },
            "num_layers": self.num_layers,
            "num_qubits": self.num_qubits,
            "grid_size": self.grid_size,
            "attempts": self.attempts,
            "master_seed": self.master_seed,
            "transposed": self.transposed,
            "layer_chaining": self.layer_chaining,
            "optimizer": {
                "initial_radius": self.optimizer.initial_radius,
                "final_radius": self.optimizer.final_radius,
                "max_evaluations": self.optimizer.max_evaluations,
                "record_trajectory": self.optimizer.record_trajectory,
            },
            "output_dir": self.output_dir,
            "n_train": self.n_train,
            "n_test": self.n_test,
        }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        task = d["task"]
        coeffs = task.get("boundary_coeffs")
        spec = TaskSpec(
            kind=task["kind"],
            target_id=task["target_id"],
            dim=task["dim"],
            boundary_coeffs=tuple(coeffs) if coeffs is not None else None,
            normalization=task["normalization"],
        )
        opt = d.get("optimizer", {})
        return cls(
            method=d["method"],
            task=spec,
            num_layers=d.get("num_layers", 3),
            num_qubits=d.get("num_qubits", 3),
            grid_size=d.get("grid_size", 8),
            attempts=d.get("attempts", 10),
            master_seed=d.get("master_seed", 42),
            transposed=d.get("transposed", False),
            layer_chaining=d.get("layer_chaining", "state_passing"),
            optimizer=OptimizerConfig(
                initial_radius=opt.get("initial_radius", 1.0),
                final_radius=opt.get("final_radius", 1e-4),
                max_evaluations=opt.get("max_evaluations", 1000),
                record_trajectory=opt.get("record_trajectory", True),
            ),
            output_dir=d.get("output_dir"),
            n_train=d.get("n_train", 10),
            n_test=d.get("n_test", 50),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with Path(path).open(encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class RunRecord:
    """One attempt: optimization trajectory and test-set evaluation."""

    attempt: int
    seed: int
    trajectory: Trajectory | None
    final_params: np.ndarray | None
    test_distances: np.ndarray | None
    test_total: float | None
    elapsed_seconds: float
    failed: bool = False
    error: str | None = None
    correct_count: int | None = None

    def to_dict(self) -> dict:
        return {
            "attempt": self.attempt,
            "seed": self.seed,
            "failed": self.failed,
            "error": self.error,
            "trajectory": (
                None
                if self.trajectory is None
                else {
                    "evaluations": [[i, v] for i, v in self.trajectory.evaluations],
                    "best_loss": self.trajectory.best_loss,
                    "num_evaluations": self.trajectory.num_evaluations,
                    "aborted": self.trajectory.aborted,
                    "abort_reason": self.trajectory.abort_reason,
                }
            ),
            "final_params": (
                None if self.final_params is None else self.final_params.tolist()
            ),
            "test_distances": (
                None if self.test_distances is None else self.test_distances.tolist()
            ),
            "test_total": self.test_total,
            "correct_count": self.correct_count,
            "elapsed_seconds": self.elapsed_seconds,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        traj = d.get("trajectory")
        trajectory = None
        if traj is not None:
            trajectory = Trajectory(
                evaluations=[(int(i), float(v)) for i, v in traj["evaluations"]],
                best_params=(
                    np.array(d["final_params"])
                    if d.get("final_params") is not None
                    else np.array([])
                ),
                best_loss=traj["best_loss"],
                num_evaluations=traj.get("num_evaluations", 0),
                aborted=traj.get("aborted", False),
                abort_reason=traj.get("abort_reason"),
            )
        return cls(
            attempt=d["attempt"],
            seed=d["seed"],
            trajectory=trajectory,
            final_params=(
                np.array(d["final_params"])
                if d.get("final_params") is not None
                else None
            ),
            test_distances=(
                np.array(d["test_distances"])
                if d.get("test_distances") is not None
                else None
            ),
            test_total=d.get("test_total"),
            elapsed_seconds=d.get("elapsed_seconds", 0.0),
            failed=d.get("failed", False),
            error=d.get("error"),
            correct_count=d.get("correct_count"),
        )


@dataclass(frozen=True)
class SummaryStats:
    """Order statistics of test_total over the successful attempts."""

    average: float
    median: float
    minimum: float
    maximum: float

    def to_dict(self) -> dict:
        return {
            "average": self.average,
            "median": self.median,
            "minimum": self.minimum,
            "maximum": self.maximum,
        }


def hamiltonian_for(config: ExperimentConfig) -> Observable:
    """Z0 Z1 on the working register of the configured method."""
    n = QNN_QUBITS if config.method == "qnn" else config.num_qubits
    return observable((1.0, "ZZ" + "I" * (n - 2)))


def _encoding_mode(task: TaskSpec) -> str:
    return "fit" if task.kind == "fit" else "simple"


def _make_predictor(
    config: ExperimentConfig, ham: Observable
) -> tuple[np.ndarray, Callable[[np.ndarray, np.ndarray], float]]:
    """Initial parameter vector and predict(flat_params, point) for the method."""
    if config.method == "evqkan":
        grid = SplineGrid(config.grid_size)
        template = EvqkanParams.zeros(
            config.num_layers, config.num_qubits, config.grid_size
        )
        mode = _encoding_mode(config.task)

        def predict(flat: np.ndarray, point: np.ndarray) -> float:
            params = template.with_flat(flat)
            return forward(
                params,
                LayerVector(point),
                mode,
                ham,
                grid,
                transposed=config.transposed,
                chaining=config.layer_chaining,
            ).prediction

        return template.flatten(), predict

    template = QnnParams(np.zeros(8 * config.num_layers))

    def predict(flat: np.ndarray, point: np.ndarray) -> float:
        return qnn_forward(template.with_flat(flat), LayerVector(point), ham)

    return template.thetas, predict


def _initial_params(config: ExperimentConfig, attempt_seed: int) -> np.ndarray:
    if config.method == "evqkan":
        # Spline coefficients start at zero, so attempts differ only through
        # dataset resampling.
        return EvqkanParams.zeros(
            config.num_layers, config.num_qubits, config.grid_size
        ).flatten()
    rng = np.random.default_rng([attempt_seed, 1])
    return QnnParams.random(config.num_layers, rng).thetas


def run_attempt(config: ExperimentConfig, attempt: int) -> RunRecord:
    """One independent optimization: fresh dataset, fresh initialization."""
    seed = config.attempt_seed(attempt)
    started = time.perf_counter()
    try:
        dataset = build_dataset(config.task, config.n_train, config.n_test, seed)
        ham = hamiltonian_for(config)
        x0 = _initial_params(config, seed)
        _, predict = _make_predictor(config, ham)

        def objective(flat: np.ndarray) -> float:
            preds = np.array(
                [predict(flat, point) for point in dataset.train_points]
            )
            return loss(preds, dataset.train_targets, dataset.weights)[0]

        trajectory = minimize(objective, x0, config.optimizer)
        if trajectory.aborted and not np.isfinite(trajectory.best_loss):
            raise DegenerateStateError(
                trajectory.abort_reason or "optimization aborted before any "
                "finite evaluation"
            )
        final = trajectory.best_params
        test_preds = np.array([predict(final, p) for p in dataset.test_points])
        distances = np.abs(test_preds - dataset.test_targets)
        total = float(distances.sum())
        correct = None
        if config.task.kind == "classify":
            labels = np.where(test_preds > 0.0, 1.0, -1.0)
            correct = int(np.sum(labels == dataset.test_targets))
        return RunRecord(
            attempt=attempt,
            seed=seed,
            trajectory=trajectory,
            final_params=final,
            test_distances=distances,
            test_total=total,
            elapsed_seconds=time.perf_counter() - started,
            correct_count=correct,
        )
    except DegenerateStateError as exc:
        warnings.warn(f"attempt {attempt} failed: {exc}", stacklevel=2)
        return RunRecord(
            attempt=attempt,
            seed=seed,
            trajectory=None,
            final_params=None,
            test_distances=None,
            test_total=None,
            elapsed_seconds=time.perf_counter() - started,
            failed=True,
            error=str(exc),
        )


def run_experiment(config: ExperimentConfig) -> list[RunRecord]:
    """All attempts of one experiment, persisted incrementally if configured.

    Attempts share nothing but the immutable config, so scheduling cannot
    change the results; they run sequentially here.
    """
    attempt_dir = None
    if config.output_dir is not None:
        attempt_dir = Path(config.output_dir) / "attempts"
        attempt_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for attempt in range(config.attempts):
        record = run_attempt(config, attempt)
        records.append(record)
        if attempt_dir is not None:
            path = attempt_dir / f"attempt_{attempt:02d}.json"
            with path.open("w", encoding="utf-8") as fh:
                json.dump(record.to_dict(), fh, indent=2)
    return records


def summarize(records: list[RunRecord]) -> SummaryStats:
    """Average / median / min / max of test_total over successful attempts."""
    totals = [r.test_total for r in records if not r.failed]
    if not totals:
        raise ValueError("no successful records to summarize")
    return SummaryStats(
        average=float(statistics.fmean(totals)),
        median=float(statistics.median(totals)),
        minimum=float(min(totals)),
        maximum=float(max(totals)),
    )


@dataclass
class SweepRow:
    num_layers: int
    stats: SummaryStats
    mean_elapsed_seconds: float
    records: list[RunRecord]


def layer_sweep(base: ExperimentConfig, layer_range: list[int]) -> list[SweepRow]:
    """run_experiment per layer count."""
    if not layer_range:
        raise ValueError("layer_range must be non-empty")
    rows = []
    for num_layers in layer_range:
        sub_dir = None
        if base.output_dir is not None:
            sub_dir = str(Path(base.output_dir) / f"layers_{num_layers}")
        config = replace(base, num_layers=num_layers, output_dir=sub_dir)
        records = run_experiment(config)
        elapsed = [r.elapsed_seconds for r in records if not r.failed]
        rows.append(
            SweepRow(
                num_layers=num_layers,
                stats=summarize(records),
                mean_elapsed_seconds=float(statistics.fmean(elapsed)),
                records=records,
            )
        )
    return rows
