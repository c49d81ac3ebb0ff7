"""Estimator-style wrappers around the functional propagation core.

Both classes follow the scikit-learn protocol: hyperparameters are plain
``__init__`` attributes (so ``get_params`` / ``set_params`` / ``clone``
work), ``fit`` consumes the medium — an :class:`IndexSquaredMap` — and
stores the prepared state in trailing-underscore attributes, and
``transform`` advances a :class:`Field` by one step length.  ``fit`` is
where the expensive work happens (operator construction plus one truncated
SVD); each ``transform`` is then two cheap tensor contractions.

There is deliberately no ``TransformerMixin``: ``fit`` and ``transform``
consume different kinds of objects (a medium versus a field), so a stock
``fit_transform`` would be meaningless.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .fields import Field
from .operators import build_operator_fd, build_operator_fft
from .profiles import IndexSquaredMap
from .propagation import factorize, step
from .reference import FresnelConfig, fresnel_step
from .validation import check_integer, check_positive

__all__ = ["SvdHelmholtzPropagator", "FresnelPropagator"]


def _check_index_map(X):
    if not isinstance(X, IndexSquaredMap):
        raise TypeError(
            f"fit expects an IndexSquaredMap, got {type(X).__name__}"
        )
    return X


def _check_field(X, grid):
    if not isinstance(X, Field):
        raise TypeError(f"transform expects a Field, got {type(X).__name__}")
    if X.grid != grid:
        raise ValueError("field grid does not match the fitted medium's grid")
    return X


class SvdHelmholtzPropagator(BaseEstimator):
    """One-way Helmholtz propagator in a truncated singular basis.

    Parameters
    ----------
    wavelength : float
        Vacuum wavelength in um; ``k0 = 2 pi / wavelength``.
    n_singular : int
        Retained rank of the truncated SVD.
    step_length : float
        Axial step in um baked into the per-mode phases.
    builder : {"fft", "fd"}
        Transverse-Laplacian discretization used to build the operator.
    """

    def __init__(self, *, wavelength=1.3, n_singular=80, step_length=1.0,
                 builder="fft"):
        self.wavelength = wavelength
        self.n_singular = n_singular
        self.step_length = step_length
        self.builder = builder

    def fit(self, X, y=None):
        """Build and factorize the operator for the medium ``X``.

        ``X`` is an :class:`IndexSquaredMap`; ``y`` is ignored and present
        for interface compatibility only.
        """
        index_map = _check_index_map(X)
        wavelength = check_positive("wavelength", self.wavelength)
        check_integer("n_singular", self.n_singular, minimum=1)
        if self.builder == "fft":
            build = build_operator_fft
        elif self.builder == "fd":
            build = build_operator_fd
        else:
            raise ValueError(
                f"builder must be 'fft' or 'fd', got {self.builder!r}"
            )
        k0 = 2.0 * np.pi / wavelength
        self.grid_ = index_map.grid
        self.k0_ = k0
        self.operator_ = build(index_map.grid, index_map, k0)
        self.factors_ = factorize(self.operator_, self.n_singular,
                                  self.step_length)
        return self

    def transform(self, X):
        """Advance the field ``X`` by one step length."""
        check_is_fitted(self, "factors_")
        field = _check_field(X, self.grid_)
        return step(self.factors_, field)

    def propagate(self, field, n_steps):
        """Apply ``transform`` repeatedly; returns the final field."""
        n_steps = check_integer("n_steps", n_steps, minimum=0)
        for _ in range(n_steps):
            field = self.transform(field)
        return field


class FresnelPropagator(BaseEstimator):
    """Split-step Fresnel reference propagator with the same interface.

    Parameters
    ----------
    wavelength : float
        Vacuum wavelength in um.
    reference_index : float
        Squared reference refractive index (the package-wide squared-index
        convention; the carrier uses ``sqrt(reference_index)``).
    step_length : float
        Axial step in um.
    """

    def __init__(self, *, wavelength=1.3, reference_index=1.442,
                 step_length=1.0):
        self.wavelength = wavelength
        self.reference_index = reference_index
        self.step_length = step_length

    def fit(self, X, y=None):
        """Store the medium ``X`` (an :class:`IndexSquaredMap`)."""
        index_map = _check_index_map(X)
        wavelength = check_positive("wavelength", self.wavelength)
        self.grid_ = index_map.grid
        self.index_map_ = index_map
        self.config_ = FresnelConfig(
            reference_index=self.reference_index,
            k0=2.0 * np.pi / wavelength,
            step_length=self.step_length,
        )
        return self

    def transform(self, X):
        """Advance the envelope field ``X`` by one step length."""
        check_is_fitted(self, "config_")
        field = _check_field(X, self.grid_)
        return fresnel_step(self.grid_, self.index_map_, self.config_, field)

    def propagate(self, field, n_steps):
        """Apply ``transform`` repeatedly; returns the final field."""
        n_steps = check_integer("n_steps", n_steps, minimum=0)
        for _ in range(n_steps):
            field = self.transform(field)
        return field
