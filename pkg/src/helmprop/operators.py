"""Dense builders for the flattened transverse operator H = lap + k0^2 n^2.

Both builders produce the same object: a real symmetric N^2 x N^2 matrix in
the ``r = i + N * j`` flattening, differing only in how the transverse
Laplacian is discretized.

* FFT route: each column is the impulse response of the spectral (circulant)
  Laplacian — unit excitation at one grid point, FFT, multiply by the
  diagonal wavevector-space multipliers, inverse FFT.
* FD route: the 5-point finite-difference stencil with periodic wraparound.

The diagonal index term ``k0^2 n^2(x_p, y_q)`` is added afterwards in both
cases.
"""

from dataclasses import dataclass

import numpy as np

from .fields import Field, Grid, flatten_values, unflatten_values
from .validation import check_finite_array, check_grids_match, check_positive

__all__ = [
    "OperatorMatrix",
    "spectral_laplacian_multipliers",
    "build_operator_fft",
    "build_operator_fd",
    "apply_operator_dense",
]

# Imaginary residue / asymmetry beyond this (relative to the largest entry)
# signals an indexing bug rather than round-off.
_RESIDUE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Real symmetric flattened representation of H on a grid.

    ``entries[r, s]`` couples flattened points ``r = flat_index(m, n)`` and
    ``s = flat_index(p, q)``; units are um^-2.  ``method_tag`` records the
    construction route ("fft" or "fd" for the builders in this module).
    """

    grid: Grid
    k0: float
    entries: np.ndarray
    method_tag: str

    def __post_init__(self):
        object.__setattr__(self, "k0", check_positive("k0", self.k0))
        dim = self.grid.n_points**2
        entries = np.array(self.entries, dtype=np.float64, copy=True)
        if entries.shape != (dim, dim):
            raise ValueError(
                f"entries shape {entries.shape} does not match grid "
                f"({dim}, {dim})"
            )
        check_finite_array("operator entries", entries)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if not isinstance(self.method_tag, str) or not self.method_tag:
            raise ValueError("method_tag must be a non-empty string")


def spectral_laplacian_multipliers(grid):
    """Wavevector-space multipliers of the periodic Laplacian.

    Returns the (N, N) array ``-(2 pi / W)^2 (kappa(m)^2 + kappa(n)^2)``
    with the wrapped mode numbers ``kappa(m) = m`` for ``m <= N/2`` and
    ``m - N`` above.  Requires an even N.
    """
    n = grid.n_points
    if n % 2 != 0:
        raise ValueError(f"spectral multipliers require an even grid, got N={n}")
    m = np.arange(n)
    kappa = np.where(m <= n // 2, m, m - n)
    scale = (2.0 * np.pi / grid.window_width) ** 2
    return -scale * (kappa[:, None] ** 2 + kappa[None, :] ** 2)


def build_operator_fft(grid, index_sq, k0):
    """Build H with the spectral Laplacian via per-point impulse responses.

    Column ``s = flat_index(p, q)`` holds the real part of
    ``ifft2(multipliers * fft2(impulse at (p, q)))`` flattened with the same
    convention; ``k0^2 n^2(p, q)`` is then added to the diagonal.  A large
    imaginary residue in the inverse transform is reported as an error
    instead of being silently discarded.
    """
    check_grids_match(grid, index_sq)
    k0 = check_positive("k0", k0)
    multipliers = spectral_laplacian_multipliers(grid)
    n = grid.n_points
    dim = n * n

    entries = np.empty((dim, dim), dtype=np.float64)
    impulse = np.zeros((n, n))
    largest_imag = 0.0
    for q in range(n):
        for p in range(n):
            impulse[p, q] = 1.0
            response = np.fft.ifft2(multipliers * np.fft.fft2(impulse))
            impulse[p, q] = 0.0
            largest_imag = max(largest_imag, float(np.abs(response.imag).max()))
            entries[:, p + n * q] = flatten_values(response.real)

    diagonal = np.arange(dim)
    entries[diagonal, diagonal] += k0**2 * flatten_values(index_sq.values)

    scale = float(np.abs(entries).max())
    if largest_imag > _RESIDUE_TOL * scale:
        raise ValueError(
            f"imaginary residue {largest_imag:.3e} exceeds {_RESIDUE_TOL:.0e} "
            "of the largest entry; the spectral construction is inconsistent"
        )
    return OperatorMatrix(grid, k0, entries, "fft")


def build_operator_fd(grid, index_sq, k0):
    """Build H with the periodic 5-point finite-difference Laplacian.

    Diagonal entries are ``k0^2 n^2(p, q) - 4 / dx^2``; each column carries
    ``1 / dx^2`` at the four periodic nearest neighbours (accumulated, so
    coincident neighbours on very small grids stack up and every column still
    sums to exactly ``k0^2 n^2(p, q)``).
    """
    check_grids_match(grid, index_sq)
    k0 = check_positive("k0", k0)
    n = grid.n_points
    dim = n * n
    inv_dx2 = 1.0 / grid.spacing**2

    entries = np.zeros((dim, dim), dtype=np.float64)
    for q in range(n):
        for p in range(n):
            s = p + n * q
            entries[s, s] = k0**2 * index_sq.values[p, q] - 4.0 * inv_dx2
            for pp, qq in (
                ((p + 1) % n, q),
                ((p - 1) % n, q),
                (p, (q + 1) % n),
                (p, (q - 1) % n),
            ):
                entries[pp + n * qq, s] += inv_dx2
    return OperatorMatrix(grid, k0, entries, "fd")


def apply_operator_dense(op, field):
    """Apply the dense operator to a field: unflatten(entries @ flatten(E))."""
    check_grids_match(op, field)
    product = op.entries @ flatten_values(field.values)
    return Field(op.grid, unflatten_values(product, op.grid.n_points))
