"""Small input-validation helpers shared across the package.

These keep error messages uniform: every public entry point validates its
scalar parameters and grid compatibility through the functions below instead
of ad-hoc ``if`` blocks.
"""

import numbers

import numpy as np

__all__ = [
    "check_positive",
    "check_nonnegative",
    "check_integer",
    "check_finite_array",
    "check_grids_match",
]


def check_positive(name, value):
    """Return ``float(value)`` or raise ``ValueError`` unless value > 0."""
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite real number, got {value!r}")
    value = float(value)
    if value <= 0.0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def check_nonnegative(name, value):
    """Return ``float(value)`` or raise ``ValueError`` unless value >= 0."""
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ValueError(f"{name} must be a finite real number, got {value!r}")
    value = float(value)
    if value < 0.0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


def check_integer(name, value, minimum=None):
    """Return ``int(value)`` or raise ``ValueError`` for non-integers.

    Floats are rejected even when integral so that silently truncated
    parameters never enter a simulation.
    """
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_finite_array(name, values):
    """Raise ``ValueError`` if any entry of ``values`` is NaN or infinite."""
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} contains non-finite entries")


def check_grids_match(*grids):
    """Raise ``ValueError`` unless all grids are identical.

    Accepts ``Grid`` instances directly or any object carrying a ``.grid``
    attribute (fields, index maps, operators, masks).
    """
    resolved = [getattr(g, "grid", g) for g in grids]
    first = resolved[0]
    for other in resolved[1:]:
        if other != first:
            raise ValueError(
                f"grid mismatch: {first.n_points} points @ {first.spacing} um "
                f"vs {other.n_points} points @ {other.spacing} um"
            )
