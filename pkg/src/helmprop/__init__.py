"""helmprop: one-way Helmholtz beam propagation via truncated SVD.

The package builds a dense discretization of the transverse operator
``H = lap + k0^2 n^2`` (spectral impulse-response or periodic 5-point
finite differences), factorizes it once with a truncated SVD, and advances
complex fields by ``exp(i dz sqrt(H))`` in the retained singular basis.
A Fresnel split-step reference propagator and a dense eigendecomposition
oracle are included for validation, along with index profiles, a boundary
absorber, snapshot/trajectory I/O, and a config-driven CLI.

Setting the environment variable ``HELMPROP_THREADS`` to a positive integer
before the package is imported caps the linear-algebra backend's thread
count (it populates OMP/BLAS thread variables, which must happen before
numpy loads its backend).
"""

import os


def _configure_threads():
    raw = os.environ.get("HELMPROP_THREADS")
    if raw is None:
        return
    try:
        count = int(raw)
    except ValueError:
        count = -1
    if count < 1:
        raise ValueError(
            f"HELMPROP_THREADS must be a positive integer, got {raw!r}"
        )
    for var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        os.environ[var] = str(count)


_configure_threads()

from .absorber import AbsorberMask, apply_absorber, make_absorber  # noqa: E402
from .config import CONFIG_DEFAULTS, ConfigError, METHODS, SimConfig, parse_config  # noqa: E402
from .diagnostics import (  # noqa: E402
    TrajectoryRecord,
    ray_period,
    read_field_snapshot,
    read_trajectory,
    write_field_snapshot,
    write_trajectory,
)
from .estimators import FresnelPropagator, SvdHelmholtzPropagator  # noqa: E402
from .fields import (  # noqa: E402
    Field,
    Grid,
    NonFiniteFieldError,
    centroid,
    flat_index,
    flatten_values,
    gaussian_field,
    l2_norm,
    make_grid,
    unflatten_values,
)
from .operators import (  # noqa: E402
    OperatorMatrix,
    apply_operator_dense,
    build_operator_fd,
    build_operator_fft,
    spectral_laplacian_multipliers,
)
from .profiles import (  # noqa: E402
    IndexSquaredMap,
    ParabolicProfile,
    index_delta_map,
    parabolic_index_squared,
    sample_profile,
)
from .propagation import (  # noqa: E402
    PropagatorFactors,
    factorize,
    perturbative_phase,
    signed_spectrum,
    step,
)
from .reference import (  # noqa: E402
    FresnelConfig,
    apply_dense_propagator,
    dense_helmholtz_propagator,
    fresnel_step,
)
from .simulate import (  # noqa: E402
    ComparisonPair,
    ComparisonReport,
    PropagationAbort,
    RunSummary,
    compare_runs,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "AbsorberMask",
    "apply_absorber",
    "make_absorber",
    "CONFIG_DEFAULTS",
    "ConfigError",
    "METHODS",
    "SimConfig",
    "parse_config",
    "TrajectoryRecord",
    "ray_period",
    "read_field_snapshot",
    "read_trajectory",
    "write_field_snapshot",
    "write_trajectory",
    "FresnelPropagator",
    "SvdHelmholtzPropagator",
    "Field",
    "Grid",
    "NonFiniteFieldError",
    "centroid",
    "flat_index",
    "flatten_values",
    "gaussian_field",
    "l2_norm",
    "make_grid",
    "unflatten_values",
    "OperatorMatrix",
    "apply_operator_dense",
    "build_operator_fd",
    "build_operator_fft",
    "spectral_laplacian_multipliers",
    "IndexSquaredMap",
    "ParabolicProfile",
    "index_delta_map",
    "parabolic_index_squared",
    "sample_profile",
    "PropagatorFactors",
    "factorize",
    "perturbative_phase",
    "signed_spectrum",
    "step",
    "FresnelConfig",
    "apply_dense_propagator",
    "dense_helmholtz_propagator",
    "fresnel_step",
    "ComparisonPair",
    "ComparisonReport",
    "PropagationAbort",
    "RunSummary",
    "compare_runs",
    "run_simulation",
    "__version__",
]
