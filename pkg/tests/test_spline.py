"""Basis checks against a naive Cox-de Boor recursion written from scratch."""
import numpy as np
import pytest

from evqkan.spline import SplineGrid, basis_values, spline_sum


def naive_basis(x, degree, i, knots):
    """Textbook recursive B-spline, half-open intervals, closed at the top."""
    if degree == 0:
        if knots[i] <= x < knots[i + 1]:
            return 1.0
        if x == knots[-1] and knots[i] < knots[i + 1] == knots[-1]:
            return 1.0
        return 0.0
    left = 0.0
    if knots[i + degree] != knots[i]:
        left = (x - knots[i]) / (knots[i + degree] - knots[i]) * naive_basis(
            x, degree - 1, i, knots
        )
    right = 0.0
    if knots[i + degree + 1] != knots[i + 1]:
        right = (knots[i + degree + 1] - x) / (
            knots[i + degree + 1] - knots[i + 1]
        ) * naive_basis(x, degree - 1, i + 1, knots)
    return left + right


def naive_all(grid, x):
    return np.array(
        [naive_basis(x, grid.order, i, grid.knots) for i in range(grid.num_basis)]
    )


def test_default_grid_knots():
    grid = SplineGrid()
    np.testing.assert_allclose(
        grid.knots, [0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1]
    )


def test_clamped_left_end():
    vals = basis_values(SplineGrid(), 0.0)
    np.testing.assert_array_equal(vals, [1, 0, 0, 0, 0, 0, 0, 0])


def test_clamped_right_end():
    vals = basis_values(SplineGrid(), 1.0)
    np.testing.assert_array_equal(vals, [0, 0, 0, 0, 0, 0, 0, 1])


def test_partition_of_unity():
    grid = SplineGrid()
    for x in np.linspace(0.0, 1.0, 1000):
        assert abs(basis_values(grid, x).sum() - 1.0) < 1e-12


def test_non_negativity():
    grid = SplineGrid()
    for x in np.linspace(0.0, 1.0, 1000):
        assert np.all(basis_values(grid, x) >= 0.0)


def test_local_support():
    grid = SplineGrid()
    for x in np.linspace(0.0, 1.0, 500):
        assert np.count_nonzero(basis_values(grid, x)) <= grid.order + 1


def test_continuity():
    grid = SplineGrid()
    h = 1e-6
    for x in np.linspace(0.0, 1.0 - h, 200):
        step = np.abs(basis_values(grid, x + h) - basis_values(grid, x))
        assert step.max() < 1e-4


def test_matches_naive_recursion_midpoint():
    grid = SplineGrid()
    np.testing.assert_allclose(
        basis_values(grid, 0.5), naive_all(grid, 0.5), atol=1e-12
    )


def test_matches_naive_recursion_random_points():
    grid = SplineGrid()
    rng = np.random.default_rng(3)
    for x in np.append(rng.uniform(size=50), [0.0, 0.2, 0.4, 1.0]):
        np.testing.assert_allclose(
            basis_values(grid, x), naive_all(grid, x), atol=1e-12
        )


def test_matches_naive_on_other_grid_shapes():
    for num_basis, order in [(4, 3), (5, 2), (8, 1), (12, 3)]:
        grid = SplineGrid(num_basis, order)
        for x in np.linspace(0.0, 1.0, 101):
            np.testing.assert_allclose(
                basis_values(grid, x), naive_all(grid, x), atol=1e-12
            )


def test_basis_rejects_out_of_domain():
    with pytest.raises(ValueError):
        basis_values(SplineGrid(), -0.01)
    with pytest.raises(ValueError):
        basis_values(SplineGrid(), 1.01)


def test_spline_sum_zero_coefficients():
    assert spline_sum(SplineGrid(), np.zeros(8), 0.37) == 0.0


def test_spline_sum_constant_coefficients():
    grid = SplineGrid()
    for x in np.linspace(0.0, 1.0, 50):
        assert abs(spline_sum(grid, np.full(8, 2.5), x) - 2.5) < 1e-12


def test_spline_sum_matches_dot_product():
    grid = SplineGrid()
    rng = np.random.default_rng(4)
    coeffs = rng.normal(size=8)
    want = float(np.dot(coeffs, naive_all(grid, 0.3)))
    assert abs(spline_sum(grid, coeffs, 0.3) - want) < 1e-12


def test_spline_sum_rejects_length_mismatch():
    with pytest.raises(ValueError):
        spline_sum(SplineGrid(), np.zeros(7), 0.5)


def test_grid_validation():
    with pytest.raises(ValueError):
        SplineGrid(num_basis=3, order=3)
    with pytest.raises(ValueError):
        SplineGrid(knots=np.linspace(0, 1, 5))
