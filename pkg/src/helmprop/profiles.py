"""Refractive-index-squared distributions and their sampling onto grids.

All index data in this package is carried as the *square* of the refractive
index, matching the form in which it enters the transverse operator
``H = lap + k0^2 n^2``.  Conversions to plain indices happen only where a
formula genuinely needs ``n`` (see :func:`index_delta_map`).
"""

from dataclasses import dataclass

import numpy as np

from .fields import Grid
from .validation import check_finite_array, check_grids_match, check_positive

__all__ = [
    "ParabolicProfile",
    "IndexSquaredMap",
    "parabolic_index_squared",
    "sample_profile",
    "index_delta_map",
]


@dataclass(frozen=True)
class ParabolicProfile:
    """Radially clamped parabolic n^2 profile.

    ``n^2(r) = n0_squared * (1 - depth * (min(r, a) / a)^2)`` with
    ``a = clamp_radius``; constant for ``r >= a``.  ``depth`` is the
    fractional n^2 drop at the clamp radius and must satisfy
    ``0 <= depth < 1`` so that n^2 stays strictly positive.
    """

    n0_squared: float
    depth: float
    clamp_radius: float

    def __post_init__(self):
        object.__setattr__(
            self, "n0_squared", check_positive("n0_squared", self.n0_squared)
        )
        depth = float(self.depth)
        if not np.isfinite(depth) or not 0.0 <= depth < 1.0:
            raise ValueError(f"depth must lie in [0, 1), got {self.depth!r}")
        object.__setattr__(self, "depth", depth)
        object.__setattr__(
            self, "clamp_radius", check_positive("clamp_radius", self.clamp_radius)
        )


@dataclass(frozen=True, eq=False)
class IndexSquaredMap:
    """Samples of n^2(x, y) on a grid; strictly positive and finite."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n_points
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != (n, n):
            raise ValueError(
                f"index map shape {values.shape} does not match grid ({n}, {n})"
            )
        check_finite_array("index map", values)
        if np.any(values <= 0.0):
            raise ValueError("index map values must be strictly positive")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def parabolic_index_squared(x, y, profile):
    """Evaluate the profile's n^2 at coordinates (x, y) in um.

    Works elementwise on arrays; returns a plain float for scalar input.
    """
    r = np.hypot(x, y)
    scaled = np.minimum(r, profile.clamp_radius) / profile.clamp_radius
    value = profile.n0_squared * (1.0 - profile.depth * scaled**2)
    if np.ndim(value) == 0:
        return float(value)
    return value


def sample_profile(grid, profile):
    """Sample a profile onto every grid point: values[i, j] = n^2(x_i, y_j)."""
    x = grid.coordinates[:, None]
    y = grid.coordinates[None, :]
    return IndexSquaredMap(grid, parabolic_index_squared(x, y, profile))


def index_delta_map(current, initial):
    """Elementwise refractive-index difference ``sqrt(n^2_cur) - sqrt(n^2_init)``.

    This is the delta-n entering the perturbative phase factor, which acts on
    indices rather than their squares.
    """
    check_grids_match(current, initial)
    return np.sqrt(current.values) - np.sqrt(initial.values)
