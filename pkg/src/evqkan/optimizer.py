"""Derivative-free minimization with trajectory recording.

The search itself is COBYLA (linear interpolation models over a simplex
inside a shrinking trust region) as shipped by scipy; this module owns the
evaluation accounting: a hard evaluation budget, finiteness checking, and the
recorded trajectory the experiment reports are built from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize


@dataclass(frozen=True)
class OptimizerConfig:
    """Trust-region schedule and evaluation budget."""

    initial_radius: float = 1.0
    final_radius: float = 1e-4
    max_evaluations: int = 1000
    record_trajectory: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.final_radius < self.initial_radius:
            raise ValueError(
                f"need 0 < final_radius < initial_radius, got "
                f"{self.final_radius} / {self.initial_radius}"
            )
        if self.max_evaluations < 1:
            raise ValueError(f"max_evaluations must be >= 1, got {self.max_evaluations}")


@dataclass
class Trajectory:
    """Everything observed during one minimization."""

    evaluations: list[tuple[int, float]]
    best_params: np.ndarray
    best_loss: float
    num_evaluations: int = 0
    aborted: bool = False
    abort_reason: str | None = None


class _BudgetExhausted(Exception):
    pass


class _NonFiniteObjective(Exception):
    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value


def minimize(objective, x0: np.ndarray, config: OptimizerConfig) -> Trajectory:
    """Minimize `objective` from `x0`.

    Deterministic in (objective, x0, config); never evaluates the objective
    more than config.max_evaluations times; stops early once the trust radius
    shrinks below config.final_radius.  A non-finite objective value aborts
    the search, leaving the diagnostic on the returned trajectory.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.size == 0 or not np.all(np.isfinite(x0)):
        raise ValueError("x0 must be a non-empty finite vector")
    if config.max_evaluations < x0.size + 2:
        raise ValueError(
            f"budget {config.max_evaluations} below dim + 2 = {x0.size + 2}"
        )

    evaluations: list[tuple[int, float]] = []
    state = {"count": 0, "best_loss": math.inf, "best_params": x0.copy()}

    def wrapped(x: np.ndarray) -> float:
        if state["count"] >= config.max_evaluations:
            raise _BudgetExhausted
        value = float(objective(x))
        index = state["count"]
        state["count"] = index + 1
        if not math.isfinite(value):
            raise _NonFiniteObjective(index, value)
        if config.record_trajectory:
            evaluations.append((index, value))
        if value < state["best_loss"]:
            state["best_loss"] = value
            state["best_params"] = np.array(x, dtype=float, copy=True)
        return value

    aborted = False
    abort_reason = None
    try:
        scipy.optimize.minimize(
            wrapped,
            x0,
            method="COBYLA",
            tol=config.final_radius,
            options={
                "rhobeg": config.initial_radius,
                "maxiter": config.max_evaluations,
            },
        )
    except _BudgetExhausted:
        pass
    except _NonFiniteObjective as exc:
        aborted = True
        abort_reason = (
            f"non-finite objective value {exc.value!r} at evaluation {exc.index}"
        )

    return Trajectory(
        evaluations=evaluations,
        best_params=state["best_params"],
        best_loss=state["best_loss"],
        num_evaluations=state["count"],
        aborted=aborted,
        abort_reason=abort_reason,
    )
