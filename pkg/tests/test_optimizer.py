"""Budget accounting, determinism, and convergence of the minimizer."""
import numpy as np
import pytest

from evqkan.optimizer import OptimizerConfig, Trajectory, minimize


def quadratic(x):
    return float((x[0] - 1.0) ** 2 + (x[1] - 2.0) ** 2)


def test_quadratic_convergence():
    traj = minimize(quadratic, np.zeros(2), OptimizerConfig(max_evaluations=200))
    assert traj.best_loss < 1e-3
    assert traj.num_evaluations <= 200


def test_scalar_absolute_value():
    traj = minimize(
        lambda x: abs(float(x[0])), np.array([5.0]),
        OptimizerConfig(max_evaluations=200),
    )
    assert abs(traj.best_params[0]) < 1e-2


def test_constant_objective_stops_on_radius():
    traj = minimize(
        lambda x: 7.5, np.zeros(3), OptimizerConfig(max_evaluations=1000)
    )
    assert traj.best_loss == 7.5
    assert traj.num_evaluations < 1000  # terminated by the shrinking radius


def test_determinism_byte_exact():
    config = OptimizerConfig(max_evaluations=300)
    a = minimize(quadratic, np.zeros(2), config)
    b = minimize(quadratic, np.zeros(2), config)
    assert a.evaluations == b.evaluations
    np.testing.assert_array_equal(a.best_params, b.best_params)
    assert a.best_loss == b.best_loss


def test_never_exceeds_budget():
    calls = [0]

    def counting(x):
        calls[0] += 1
        return float(np.sum((x - 3.0) ** 2))

    budget = 12
    traj = minimize(
        counting, np.zeros(10),
        OptimizerConfig(max_evaluations=budget, final_radius=1e-12),
    )
    assert calls[0] <= budget
    assert traj.num_evaluations == calls[0]


def test_best_loss_is_running_minimum():
    traj = minimize(quadratic, np.zeros(2), OptimizerConfig(max_evaluations=150))
    losses = [v for _, v in traj.evaluations]
    assert traj.best_loss == min(losses)
    running = np.minimum.accumulate(losses)
    assert np.all(np.diff(running) <= 0.0)


def test_record_trajectory_flag():
    traj = minimize(
        quadratic, np.zeros(2),
        OptimizerConfig(max_evaluations=100, record_trajectory=False),
    )
    assert traj.evaluations == []
    assert traj.best_loss < 1e-2  # best still tracked


def test_non_finite_objective_aborts_with_diagnostic():
    def exploding(x):
        return float("nan") if np.linalg.norm(x) > 0.5 else float(np.sum(x**2))

    traj = minimize(exploding, np.zeros(2), OptimizerConfig(max_evaluations=100))
    assert traj.aborted
    assert "non-finite" in traj.abort_reason
    assert all(np.isfinite(v) for _, v in traj.evaluations)


def test_convex_quadratic_reaches_optimum_value():
    rng = np.random.default_rng(60)
    dim = 6
    a = rng.normal(size=(dim, dim))
    spd = a @ a.T + dim * np.eye(dim)
    center = rng.normal(size=dim)

    def objective(x):
        d = x - center
        return float(d @ spd @ d)

    traj = minimize(
        objective, np.zeros(dim), OptimizerConfig(max_evaluations=100 * dim)
    )
    assert traj.best_loss < 1e-3


def test_rejects_tiny_budget_and_bad_config():
    with pytest.raises(ValueError):
        minimize(quadratic, np.zeros(5), OptimizerConfig(max_evaluations=6))
    with pytest.raises(ValueError):
        OptimizerConfig(initial_radius=1e-5, final_radius=1e-4)
    with pytest.raises(ValueError):
        minimize(quadratic, np.array([np.nan, 0.0]), OptimizerConfig())
