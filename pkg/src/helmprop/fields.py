"""Sampling grid, complex field container, and scalar beam diagnostics.

The transverse plane is discretized on a square, uniformly spaced grid of
``n_points`` samples per side.  Coordinates are centered on the window:
``x_i = (i - N/2) * spacing``.  Two-dimensional sample arrays are flattened
to vectors with the convention ``r = i + N * j`` (first index fastest), which
all operator and propagator code in this package shares.
"""

from dataclasses import dataclass, field as _dc_field

import numpy as np

from .validation import check_finite_array, check_integer, check_positive

__all__ = [
    "Grid",
    "Field",
    "NonFiniteFieldError",
    "make_grid",
    "flat_index",
    "flatten_values",
    "unflatten_values",
    "gaussian_field",
    "l2_norm",
    "centroid",
]


class NonFiniteFieldError(ValueError):
    """Raised when field samples contain NaN or infinite values."""


@dataclass(frozen=True)
class Grid:
    """Uniform square sampling lattice for the transverse plane.

    Attributes
    ----------
    n_points : int
        Samples per side (N).
    spacing : float
        Sample separation in um.
    window_width : float
        Derived, ``n_points * spacing`` exactly.
    coordinates : ndarray
        Derived, length ``n_points``: ``(i - N // 2) * spacing``, strictly
        increasing with constant difference ``spacing``.
    """

    n_points: int
    spacing: float
    window_width: float = _dc_field(init=False)
    coordinates: np.ndarray = _dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = check_integer("n_points", self.n_points, minimum=1)
        dx = check_positive("spacing", self.spacing)
        object.__setattr__(self, "n_points", n)
        object.__setattr__(self, "spacing", dx)
        object.__setattr__(self, "window_width", n * dx)
        coords = (np.arange(n) - n // 2) * dx
        coords.setflags(write=False)
        object.__setattr__(self, "coordinates", coords)


@dataclass(frozen=True, eq=False)
class Field:
    """Complex amplitude samples on a grid, indexed ``[i_x, i_y]``.

    The sample array is copied, cast to complex128 and frozen; every value
    must be finite (construction raises :class:`NonFiniteFieldError`
    otherwise, which the simulation loop uses to abort cleanly).
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n_points
        values = np.array(self.values, dtype=np.complex128, copy=True)
        if values.shape != (n, n):
            raise ValueError(
                f"field shape {values.shape} does not match grid ({n}, {n})"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteFieldError("field values contain NaN or Inf")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def make_grid(n_points, spacing):
    """Build a centered square grid with an even number of points per side.

    Evenness is required by the wrapped-wavenumber construction used in the
    spectral Laplacian and the Fresnel diffraction factor.
    """
    n_points = check_integer("n_points", n_points, minimum=2)
    if n_points % 2 != 0:
        raise ValueError(f"n_points must be even, got {n_points}")
    return Grid(n_points, spacing)


def flat_index(i, j, n_points):
    """Map grid indices (i, j) to the flattened index ``r = i + N * j``."""
    n_points = check_integer("n_points", n_points, minimum=1)
    i = check_integer("i", i)
    j = check_integer("j", j)
    if not (0 <= i < n_points and 0 <= j < n_points):
        raise ValueError(
            f"indices ({i}, {j}) out of range for n_points={n_points}"
        )
    return i + n_points * j


def flatten_values(values):
    """Flatten an (N, N) sample array to a vector under ``r = i + N * j``."""
    values = np.asarray(values)
    return values.ravel(order="F")


def unflatten_values(vector, n_points):
    """Inverse of :func:`flatten_values`: reshape a length-N^2 vector."""
    vector = np.asarray(vector)
    if vector.size != n_points * n_points:
        raise ValueError(
            f"vector of size {vector.size} cannot fill a "
            f"{n_points}x{n_points} grid"
        )
    return vector.reshape((n_points, n_points), order="F")


def gaussian_field(grid, width, offset_x=0.0, offset_y=0.0):
    """Gaussian beam ``exp(-((x-x0)^2 + (y-y0)^2) / width^2)``.

    ``width`` is the 1/e amplitude radius: the sample one ``width`` away
    from the peak equals ``exp(-1)``.  The peak amplitude is 1.
    """
    width = check_positive("width", width)
    x = grid.coordinates[:, None] - float(offset_x)
    y = grid.coordinates[None, :] - float(offset_y)
    values = np.exp(-(x**2 + y**2) / width**2)
    return Field(grid, values)


def l2_norm(field):
    """Return ``sqrt(sum |E|^2 * dx^2)``, zero iff the field is zero.

    The cell area makes the value comparable across grid resolutions.
    """
    return float(np.sqrt(np.sum(np.abs(field.values) ** 2)) * field.grid.spacing)


def centroid(field):
    """Intensity centroid ``(sum x |E|^2, sum y |E|^2) / sum |E|^2`` in um."""
    weights = np.abs(field.values) ** 2
    total = weights.sum()
    if total == 0.0:
        raise ValueError("centroid of an identically zero field is undefined")
    coords = field.grid.coordinates
    cx = float(np.sum(weights * coords[:, None]) / total)
    cy = float(np.sum(weights * coords[None, :]) / total)
    return cx, cy
