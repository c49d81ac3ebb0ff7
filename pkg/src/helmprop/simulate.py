"""Config-driven orchestration: build, factorize once, step, record, compare.

For a z-invariant medium the SVD methods build and factorize the operator
exactly once; every subsequent step is a pair of cheap tensor contractions.
The Fresnel method needs no factorization at all.  Each run emits one
trajectory CSV (a record per step, including z = 0) and optional field
snapshots, all under the config's output directory:

* ``trajectory_<method>.csv``
* ``snapshot_<method>_step<k>.txt`` (six-digit step number)

Runs are deterministic: repeated runs of one config produce byte-identical
files.
"""

import functools
import itertools
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .absorber import apply_absorber, make_absorber
from .diagnostics import (
    TrajectoryRecord,
    read_trajectory,
    write_field_snapshot,
    write_trajectory,
)
from .fields import NonFiniteFieldError, centroid, gaussian_field, l2_norm, make_grid
from .operators import build_operator_fd, build_operator_fft
from .profiles import sample_profile
from .propagation import factorize, step
from .reference import FresnelConfig, fresnel_step

__all__ = [
    "PropagationAbort",
    "RunSummary",
    "ComparisonPair",
    "ComparisonReport",
    "run_simulation",
    "compare_runs",
]


class PropagationAbort(RuntimeError):
    """The field became non-finite; ``step_index`` is the failing step."""

    def __init__(self, step_index, method):
        self.step_index = step_index
        self.method = method
        super().__init__(
            f"non-finite field after step {step_index} (method {method})"
        )


@dataclass(frozen=True)
class RunSummary:
    """What a simulation run produced and how long it took."""

    method: str
    total_z: float
    final_centroid: "tuple[float, float]"
    final_norm: float
    elapsed_seconds: float
    trajectory_path: Path
    snapshot_paths: "tuple[Path, ...]"


def _snapshot_name(method, step_index):
    return f"snapshot_{method}_step{step_index:06d}.txt"


def run_simulation(cfg):
    """Run one configured propagation and write its output files."""
    started = time.perf_counter()
    grid = make_grid(cfg.n_points, cfg.spacing)
    k0 = 2.0 * np.pi / cfg.wavelength
    index_map = sample_profile(grid, cfg.profile)
    field = gaussian_field(
        grid, cfg.beam_width, cfg.beam_offset_x, cfg.beam_offset_y
    )

    if cfg.method in ("svd_fft", "svd_fd"):
        builder = build_operator_fft if cfg.method == "svd_fft" else build_operator_fd
        operator = builder(grid, index_map, k0)
        factors = factorize(operator, cfg.n_singular, cfg.step_length)
        advance = functools.partial(step, factors)
    elif cfg.method == "fresnel":
        fresnel_cfg = FresnelConfig(
            reference_index=cfg.reference_index,
            k0=k0,
            step_length=cfg.step_length,
        )
        advance = functools.partial(fresnel_step, grid, index_map, fresnel_cfg)
    else:
        raise ValueError(f"unknown method {cfg.method!r}")

    mask = None
    if cfg.absorber_every > 0:
        mask = make_absorber(grid, cfg.absorber_margin, cfg.absorber_exponent)

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    snapshot_paths = []

    def record_state(z, current):
        cx, cy = centroid(current)
        return TrajectoryRecord(z, cx, cy, l2_norm(current))

    def maybe_snapshot(step_index, z, current):
        if cfg.snapshot_every > 0 and step_index % cfg.snapshot_every == 0:
            path = out_dir / _snapshot_name(cfg.method, step_index)
            write_field_snapshot(path, z, current)
            snapshot_paths.append(path)

    records = [record_state(0.0, field)]
    maybe_snapshot(0, 0.0, field)

    for step_index in range(1, cfg.n_steps + 1):
        try:
            field = advance(field)
        except NonFiniteFieldError as exc:
            raise PropagationAbort(step_index, cfg.method) from exc
        if mask is not None and step_index % cfg.absorber_every == 0:
            field = apply_absorber(field, mask)
        z = step_index * cfg.step_length
        records.append(record_state(z, field))
        maybe_snapshot(step_index, z, field)

    trajectory_path = out_dir / f"trajectory_{cfg.method}.csv"
    write_trajectory(trajectory_path, records)

    final = records[-1]
    return RunSummary(
        method=cfg.method,
        total_z=cfg.n_steps * cfg.step_length,
        final_centroid=(final.centroid_x, final.centroid_y),
        final_norm=final.l2_norm,
        elapsed_seconds=time.perf_counter() - started,
        trajectory_path=trajectory_path,
        snapshot_paths=tuple(snapshot_paths),
    )


@dataclass(frozen=True)
class ComparisonPair:
    """RMS and max |delta centroid_y| between two trajectories."""

    name_a: str
    name_b: str
    rms_dy: float
    max_dy: float


@dataclass(frozen=True)
class ComparisonReport:
    """Pairwise trajectory comparison over identical z samples."""

    pairs: "tuple[ComparisonPair, ...]"

    def summary_lines(self):
        lines = []
        for pair in self.pairs:
            lines.append(
                f"{pair.name_a} vs {pair.name_b}: "
                f"RMS |dcentroid_y| = {pair.rms_dy:.6f} um, "
                f"max |dcentroid_y| = {pair.max_dy:.6f} um"
            )
        return lines


def compare_runs(trajectory_paths, output_path=None):
    """Compare 2-3 trajectory files pairwise on centroid_y.

    All trajectories must share identical z samples.  When ``output_path``
    is given, the pairwise numbers are also written as a small CSV report
    (header ``name_a,name_b,rms_dcentroid_y,max_dcentroid_y``).
    """
    paths = [Path(p) for p in trajectory_paths]
    if not 2 <= len(paths) <= 3:
        raise ValueError(f"compare_runs takes 2 or 3 trajectories, got {len(paths)}")

    loaded = []
    for path in paths:
        records = read_trajectory(path)
        z = np.array([r.z for r in records])
        cy = np.array([r.centroid_y for r in records])
        loaded.append((path.stem, z, cy))

    reference_z = loaded[0][1]
    for name, z, _ in loaded[1:]:
        if z.shape != reference_z.shape or not np.array_equal(z, reference_z):
            raise ValueError(
                f"trajectory '{name}' is not sampled on the same z grid as "
                f"'{loaded[0][0]}'"
            )

    pairs = []
    for (name_a, _, cy_a), (name_b, _, cy_b) in itertools.combinations(loaded, 2):
        delta = np.abs(cy_a - cy_b)
        pairs.append(
            ComparisonPair(
                name_a=name_a,
                name_b=name_b,
                rms_dy=float(np.sqrt(np.mean(delta**2))),
                max_dy=float(delta.max()),
            )
        )
    report = ComparisonReport(pairs=tuple(pairs))

    if output_path is not None:
        lines = ["name_a,name_b,rms_dcentroid_y,max_dcentroid_y\n"]
        for pair in report.pairs:
            lines.append(
                f"{pair.name_a},{pair.name_b},"
                f"{pair.rms_dy:.17g},{pair.max_dy:.17g}\n"
            )
        with open(output_path, "w") as handle:
            handle.writelines(lines)
    return report
