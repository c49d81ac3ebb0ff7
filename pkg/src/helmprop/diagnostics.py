"""Plot-ready text serialization of fields and trajectories, plus the
analytic paraxial ray period.

Snapshot format (one file per z position)::

    # z=<z> n=<N> dx=<spacing>
    ix,iy,x,y,re,im          (one line per grid point, i_x outer)

Trajectory format (CSV)::

    z,centroid_x,centroid_y,l2_norm

All reals are written with 17 significant digits, which round-trips IEEE
doubles exactly.
"""

import re
from dataclasses import dataclass

import numpy as np

from .fields import Field, Grid
from .validation import check_nonnegative

__all__ = [
    "TrajectoryRecord",
    "write_field_snapshot",
    "read_field_snapshot",
    "write_trajectory",
    "read_trajectory",
    "ray_period",
]

_HEADER_RE = re.compile(
    r"^#\s*z=(?P<z>\S+)\s+n=(?P<n>\d+)\s+dx=(?P<dx>\S+)\s*$"
)
_TRAJECTORY_HEADER = "z,centroid_x,centroid_y,l2_norm"


@dataclass(frozen=True)
class TrajectoryRecord:
    """One sampled point of a propagation run."""

    z: float
    centroid_x: float
    centroid_y: float
    l2_norm: float

    def __post_init__(self):
        object.__setattr__(self, "z", float(self.z))
        object.__setattr__(self, "centroid_x", float(self.centroid_x))
        object.__setattr__(self, "centroid_y", float(self.centroid_y))
        object.__setattr__(
            self, "l2_norm", check_nonnegative("l2_norm", self.l2_norm)
        )


def write_field_snapshot(path, z, field):
    """Write one field to a text snapshot at axial position ``z``."""
    grid = field.grid
    n = grid.n_points
    coords = grid.coordinates
    values = field.values
    lines = [f"# z={z:.17g} n={n} dx={grid.spacing:.17g}\n"]
    for ix in range(n):
        x = coords[ix]
        for iy in range(n):
            v = values[ix, iy]
            lines.append(
                f"{ix},{iy},{x:.17g},{coords[iy]:.17g},"
                f"{v.real:.17g},{v.imag:.17g}\n"
            )
    with open(path, "w") as handle:
        handle.writelines(lines)


def read_field_snapshot(path):
    """Read a snapshot back; returns ``(z, Field)``.

    Raises ``ValueError`` on a malformed header, a wrong number of data
    lines, or non-finite sample values.
    """
    with open(path) as handle:
        lines = handle.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty snapshot file")
    match = _HEADER_RE.match(lines[0])
    if match is None:
        raise ValueError(f"{path}: malformed snapshot header {lines[0]!r}")
    z = float(match.group("z"))
    n = int(match.group("n"))
    grid = Grid(n, float(match.group("dx")))

    data_lines = [line for line in lines[1:] if line.strip()]
    if len(data_lines) != n * n:
        raise ValueError(
            f"{path}: expected {n * n} data lines, found {len(data_lines)}"
        )
    values = np.zeros((n, n), dtype=np.complex128)
    for lineno, line in enumerate(data_lines, start=2):
        parts = line.split(",")
        if len(parts) != 6:
            raise ValueError(f"{path}:{lineno}: expected 6 fields, got {line!r}")
        try:
            ix, iy = int(parts[0]), int(parts[1])
            real_part, imag_part = float(parts[4]), float(parts[5])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: unparsable line {line!r}") from exc
        if not (0 <= ix < n and 0 <= iy < n):
            raise ValueError(f"{path}:{lineno}: indices out of range")
        if not (np.isfinite(real_part) and np.isfinite(imag_part)):
            raise ValueError(f"{path}:{lineno}: non-finite field value")
        values[ix, iy] = real_part + 1j * imag_part
    return z, Field(grid, values)


def write_trajectory(path, records):
    """Write trajectory records as CSV; z must be non-decreasing."""
    records = list(records)
    for previous, current in zip(records, records[1:]):
        if current.z < previous.z:
            raise ValueError(
                f"trajectory z values must be non-decreasing "
                f"({previous.z} followed by {current.z})"
            )
    lines = [_TRAJECTORY_HEADER + "\n"]
    for record in records:
        lines.append(
            f"{record.z:.17g},{record.centroid_x:.17g},"
            f"{record.centroid_y:.17g},{record.l2_norm:.17g}\n"
        )
    with open(path, "w") as handle:
        handle.writelines(lines)


def read_trajectory(path):
    """Read a trajectory CSV back into a list of records."""
    with open(path) as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0].strip() != _TRAJECTORY_HEADER:
        found = lines[0] if lines else ""
        raise ValueError(f"{path}: malformed trajectory header {found!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 fields, got {line!r}")
        try:
            numbers = [float(part) for part in parts]
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: unparsable line {line!r}") from exc
        records.append(TrajectoryRecord(*numbers))
    return records


def ray_period(profile):
    """Paraxial ray oscillation period of a clamped parabolic profile.

    Writing ``n^2 = n0^2 (1 - 2 Delta (r/a)^2)`` with ``2 Delta = depth``
    and ``a = clamp_radius``, paraxial rays inside the clamp radius follow
    ``r'' = -(depth / a^2) r``, giving the period ``2 pi a / sqrt(depth)``
    independent of the index scale.  Requires ``depth > 0``.
    """
    if profile.depth <= 0.0:
        raise ValueError("ray period requires a profile with depth > 0")
    return 2.0 * np.pi * profile.clamp_radius / np.sqrt(profile.depth)
