"""Reference propagators: Fresnel split-step BPM and a dense oracle.

The Fresnel propagator advances the *envelope* (carrier ``exp(i k0 n_ref z)``
removed) with the symmetric splitting D(dz/2) P(dz) D(dz/2): a spectral
diffraction half-step, a position-space phase screen, and a second
diffraction half-step.  The dense oracle evaluates ``exp(i dz sqrt(H))``
exactly through a symmetric eigendecomposition and is the ground truth the
truncated propagator is tested against on small grids.
"""

import math
from dataclasses import dataclass

import numpy as np

from .fields import Field, flatten_values, unflatten_values
from .operators import OperatorMatrix, spectral_laplacian_multipliers
from .validation import (
    check_finite_array,
    check_grids_match,
    check_nonnegative,
    check_positive,
)

__all__ = [
    "FresnelConfig",
    "fresnel_step",
    "dense_helmholtz_propagator",
    "apply_dense_propagator",
]

# Largest flattened dimension the dense oracle will eigendecompose.
_DENSE_GUARD = 4096

_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class FresnelConfig:
    """Parameters of the Fresnel split-step propagator.

    ``reference_index`` is the *squared* reference refractive index, in the
    same squared convention as every other index quantity in this package
    (``ParabolicProfile.n0_squared``, ``IndexSquaredMap``).  The carrier and
    the diffraction denominator use the amplitude reference
    ``n_ref = sqrt(reference_index)``, which should sit between the minimum
    and maximum of ``sqrt(n^2)`` on the grid for the paraxial expansion to
    be accurate.
    """

    reference_index: float
    k0: float
    step_length: float

    def __post_init__(self):
        object.__setattr__(
            self,
            "reference_index",
            check_positive("reference_index", self.reference_index),
        )
        object.__setattr__(self, "k0", check_positive("k0", self.k0))
        object.__setattr__(
            self, "step_length", check_positive("step_length", self.step_length)
        )


def fresnel_step(grid, index_sq, cfg, field):
    """One symmetric split-step D(dz/2) P(dz) D(dz/2) on the envelope.

    D(h) multiplies the spectrum by ``exp(-i h (kx^2 + ky^2) / (2 k0 n_ref))``
    with the wrapped angular frequencies ``(2 pi / W) kappa(m)``; P(dz)
    multiplies in position space by ``exp(i k0 dz (sqrt(n^2) - n_ref))``.
    Both factors are unit-modulus, so the step conserves the L2 norm.
    """
    check_grids_match(grid, index_sq, field)
    n_ref = math.sqrt(cfg.reference_index)
    # The spectral Laplacian multipliers are exactly -(kx^2 + ky^2).
    k_perp_sq = -spectral_laplacian_multipliers(grid)
    half_step = np.exp(
        -1j * (cfg.step_length / 2.0) * k_perp_sq / (2.0 * cfg.k0 * n_ref)
    )
    screen = np.exp(
        1j * cfg.k0 * cfg.step_length * (np.sqrt(index_sq.values) - n_ref)
    )
    values = np.fft.ifft2(half_step * np.fft.fft2(field.values))
    values *= screen
    values = np.fft.ifft2(half_step * np.fft.fft2(values))
    return Field(grid, values)


def dense_helmholtz_propagator(op, step_length):
    """Exact one-step propagator ``sum_q exp(i dz sqrt(lambda_q)) v_q v_q^T``.

    Accepts an :class:`OperatorMatrix` or a raw symmetric real matrix.
    Guarded to flattened dimensions <= 4096 so eigendecompositions stay
    cheap; asymmetric input is rejected.
    """
    step_length = check_nonnegative("step_length", step_length)
    if isinstance(op, OperatorMatrix):
        entries = op.entries
    else:
        entries = np.asarray(op, dtype=np.float64)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"operator must be square, got shape {entries.shape}")
    check_finite_array("operator entries", entries)
    dim = entries.shape[0]
    if dim > _DENSE_GUARD:
        raise ValueError(
            f"dense oracle limited to dimension {_DENSE_GUARD}, got {dim}"
        )
    scale = float(np.abs(entries).max())
    asymmetry = float(np.abs(entries - entries.T).max())
    if scale > 0.0 and asymmetry > _SYMMETRY_TOL * scale:
        raise ValueError(
            f"operator is not symmetric (max asymmetry {asymmetry:.3e})"
        )

    lams, vecs = np.linalg.eigh(entries)
    phases = np.exp(1j * step_length * np.sqrt(lams.astype(np.complex128)))
    return (vecs * phases) @ vecs.T


def apply_dense_propagator(propagator, field):
    """Apply a dense propagator matrix: unflatten(P @ flatten(E))."""
    propagator = np.asarray(propagator)
    n = field.grid.n_points
    if propagator.shape != (n * n, n * n):
        raise ValueError(
            f"propagator shape {propagator.shape} does not match grid "
            f"dimension {n * n}"
        )
    product = propagator @ flatten_values(field.values)
    return Field(field.grid, unflatten_values(product, n))
