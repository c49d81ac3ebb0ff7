"""Smooth absorbing mask suppressing periodic wraparound at window edges.

The mask is a separable cosine-power taper ``a(x) a(y)``.  The window edge
is taken half a cell beyond the extreme samples, at ``|x| = W/2 + dx/2``, so
the mask is strictly positive at every sample and symmetric under the
periodic reflection ``x -> -x`` (index ``i -> (N - i) mod N``).
"""

from dataclasses import dataclass

import numpy as np

from .fields import Field, Grid
from .validation import check_grids_match, check_nonnegative, check_positive

__all__ = ["AbsorberMask", "make_absorber", "apply_absorber"]


@dataclass(frozen=True, eq=False)
class AbsorberMask:
    """Multiplicative mask with values in (0, 1]; 1 away from the edges."""

    grid: Grid
    values: np.ndarray
    margin: float
    exponent: float

    def __post_init__(self):
        n = self.grid.n_points
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != (n, n):
            raise ValueError(
                f"mask shape {values.shape} does not match grid ({n}, {n})"
            )
        if np.any(values <= 0.0) or np.any(values > 1.0):
            raise ValueError("mask values must lie in (0, 1]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "margin", check_nonnegative("margin", self.margin))
        object.__setattr__(
            self, "exponent", check_positive("exponent", self.exponent)
        )


def _axis_taper(grid, margin, exponent):
    """Per-axis taper: 1 in the interior, cos^exponent ramp within margin."""
    edge_distance = grid.window_width / 2.0 + grid.spacing / 2.0 - np.abs(
        grid.coordinates
    )
    depth = np.clip(margin - edge_distance, 0.0, None)
    return np.where(
        depth > 0.0,
        np.cos(0.5 * np.pi * depth / margin) ** exponent,
        1.0,
    )


def make_absorber(grid, margin, exponent):
    """Build the separable mask; ``margin = 0`` yields the all-ones mask.

    ``margin`` is the taper depth from each window edge in um and must
    satisfy ``0 <= margin < W/2``; ``exponent`` controls the taper
    sharpness.
    """
    margin = check_nonnegative("margin", margin)
    exponent = check_positive("exponent", exponent)
    if margin >= grid.window_width / 2.0:
        raise ValueError(
            f"margin must be below half the window width "
            f"({grid.window_width / 2.0} um), got {margin}"
        )
    if margin == 0.0:
        values = np.ones((grid.n_points, grid.n_points))
    else:
        taper = _axis_taper(grid, margin, exponent)
        values = taper[:, None] * taper[None, :]
    return AbsorberMask(grid, values, margin, exponent)


def apply_absorber(field, mask):
    """Multiply a field by the mask elementwise; the norm never increases."""
    check_grids_match(field, mask)
    return Field(field.grid, field.values * mask.values)
