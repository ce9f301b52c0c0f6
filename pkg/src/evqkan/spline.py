"""Clamped B-spline basis on [0, 1], the trainable part of each gate angle."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SplineGrid:
    """Clamped uniform B-spline basis: `num_basis` functions of degree `order`.

    The knot vector repeats 0 and 1 (order+1) times at the ends with uniform
    interior knots, giving a partition of unity on [0, 1].
    """

    num_basis: int = 8
    order: int = 3
    knots: np.ndarray = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if self.num_basis < self.order + 1:
            raise ValueError(
                f"num_basis must be >= order + 1, got {self.num_basis}"
            )
        if self.knots is None:
            interior = np.linspace(0.0, 1.0, self.num_basis - self.order + 1)[1:-1]
            knots = np.concatenate(
                [np.zeros(self.order + 1), interior, np.ones(self.order + 1)]
            )
            object.__setattr__(self, "knots", knots)
        else:
            knots = np.asarray(self.knots, dtype=float)
            if knots.shape != (self.num_basis + self.order + 1,):
                raise ValueError(
                    f"knot vector must have length {self.num_basis + self.order + 1}"
                )
            if np.any(np.diff(knots) < 0) or knots[0] != 0.0 or knots[-1] != 1.0:
                raise ValueError("knots must be non-decreasing from 0 to 1")
            object.__setattr__(self, "knots", knots)
        self.knots.setflags(write=False)


def _find_span(grid: SplineGrid, x: float) -> int:
    # Last span is treated as closed so that x = 1 lands on the final basis
    # function instead of falling off the half-open ladder.
    if x >= 1.0:
        return grid.num_basis - 1
    return int(np.searchsorted(grid.knots, x, side="right")) - 1


def basis_values(grid: SplineGrid, x: float) -> np.ndarray:
    """All `num_basis` basis function values at x via the Cox-de Boor triangle.

    Values are non-negative and sum to 1; at most order+1 are nonzero.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x!r}")
    t = grid.knots
    k = grid.order
    span = _find_span(grid, x)
    vals = np.zeros(k + 1)
    vals[0] = 1.0
    left = np.zeros(k + 1)
    right = np.zeros(k + 1)
    for j in range(1, k + 1):
        left[j] = x - t[span + 1 - j]
        right[j] = t[span + j] - x
        saved = 0.0
        for r in range(j):
            temp = vals[r] / (right[r + 1] + left[j - r])
            vals[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        vals[j] = saved
    out = np.zeros(grid.num_basis)
    out[span - k : span + 1] = vals
    return out


def spline_sum(grid: SplineGrid, coefficients: np.ndarray, x: float) -> float:
    """dot(coefficients, basis_values(x))."""
    coefficients = np.asarray(coefficients, dtype=float)
    if coefficients.shape != (grid.num_basis,):
        raise ValueError(
            f"expected {grid.num_basis} coefficients, got shape {coefficients.shape}"
        )
    return float(coefficients @ basis_values(grid, x))
