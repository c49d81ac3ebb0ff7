"""Plain-text ``key = value`` simulation configs and their validation.

One key per line; blank lines and ``#`` comments (full-line or trailing)
are ignored.  Unknown keys, duplicate keys, type errors, and constraint
violations are all reported as :class:`ConfigError` with the offending
file location.
"""

from dataclasses import dataclass

from .profiles import ParabolicProfile

__all__ = ["ConfigError", "SimConfig", "parse_config", "CONFIG_DEFAULTS", "METHODS"]

METHODS = ("svd_fft", "svd_fd", "fresnel")

#: Optional keys and the values they take when a config omits them.
CONFIG_DEFAULTS = {
    "beam_width": 4.0,
    "beam_offset_x": 0.0,
    "beam_offset_y": 0.0,
    "absorber_margin": 0.0,
    "absorber_exponent": 2.0,
    "absorber_every": 0,
    "snapshot_every": 0,
    "output_dir": ".",
}

_REQUIRED_KEYS = (
    "n_points",
    "spacing",
    "wavelength",
    "method",
    "step_length",
    "n_steps",
    "n0_squared",
    "depth",
    "clamp_radius",
)

_INT_KEYS = {"n_points", "n_singular", "n_steps", "absorber_every", "snapshot_every"}
_FLOAT_KEYS = {
    "spacing",
    "wavelength",
    "beam_width",
    "beam_offset_x",
    "beam_offset_y",
    "n0_squared",
    "depth",
    "clamp_radius",
    "step_length",
    "reference_index",
    "absorber_margin",
    "absorber_exponent",
}
_STR_KEYS = {"method", "output_dir"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


class ConfigError(Exception):
    """A config file could not be parsed or validated."""


@dataclass(frozen=True)
class SimConfig:
    """Fully validated simulation parameters.

    ``n_singular`` is required for the SVD methods and ``reference_index``
    (squared, see :class:`~helmprop.reference.FresnelConfig`) for the
    Fresnel method; either is ``None`` when not applicable.
    """

    n_points: int
    spacing: float
    wavelength: float
    beam_width: float
    beam_offset_x: float
    beam_offset_y: float
    profile: ParabolicProfile
    method: str
    n_singular: "int | None"
    step_length: float
    n_steps: int
    reference_index: "float | None"
    absorber_margin: float
    absorber_exponent: float
    absorber_every: int
    snapshot_every: int
    output_dir: str


def _fail(path, lineno, line, message):
    location = f"{path}:{lineno}" if lineno is not None else str(path)
    detail = f" [{line}]" if line else ""
    raise ConfigError(f"{location}: {message}{detail}")


def parse_config(path):
    """Parse and validate a config file into a :class:`SimConfig`."""
    try:
        with open(path) as handle:
            raw_lines = handle.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config file ({exc})") from exc

    values = {}
    origins = {}
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            _fail(path, lineno, raw.strip(), "expected 'key = value'")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _ALL_KEYS:
            _fail(path, lineno, raw.strip(), f"unknown key '{key}'")
        if key in values:
            _fail(path, lineno, raw.strip(), f"duplicate key '{key}'")
        if not text:
            _fail(path, lineno, raw.strip(), f"missing value for '{key}'")
        if key in _INT_KEYS:
            try:
                parsed = int(text)
            except ValueError:
                _fail(path, lineno, raw.strip(), f"'{key}' must be an integer")
        elif key in _FLOAT_KEYS:
            try:
                parsed = float(text)
            except ValueError:
                _fail(path, lineno, raw.strip(), f"'{key}' must be a number")
        else:
            parsed = text
        values[key] = parsed
        origins[key] = (lineno, raw.strip())

    def constraint(key, ok, message):
        if not ok:
            lineno, line = origins.get(key, (None, None))
            _fail(path, lineno, line, message)

    for key in _REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"{path}: missing required key '{key}'")
    for key, default in CONFIG_DEFAULTS.items():
        values.setdefault(key, default)

    constraint("method", values["method"] in METHODS,
               f"method must be one of {', '.join(METHODS)}")
    constraint("n_points", values["n_points"] >= 2 and values["n_points"] % 2 == 0,
               "n_points must be a positive even integer")
    for key in ("spacing", "wavelength", "beam_width", "step_length",
                "n0_squared", "clamp_radius"):
        constraint(key, values[key] > 0.0, f"{key} must be positive")
    constraint("depth", 0.0 <= values["depth"] < 1.0, "depth must lie in [0, 1)")
    constraint("n_steps", values["n_steps"] >= 1, "n_steps must be >= 1")
    constraint("absorber_exponent", values["absorber_exponent"] > 0.0,
               "absorber_exponent must be positive")
    constraint("absorber_every", values["absorber_every"] >= 0,
               "absorber_every must be >= 0 (0 disables the absorber)")
    constraint("snapshot_every", values["snapshot_every"] >= 0,
               "snapshot_every must be >= 0 (0 disables snapshots)")
    window = values["n_points"] * values["spacing"]
    constraint("absorber_margin",
               0.0 <= values["absorber_margin"] < window / 2.0,
               f"absorber_margin must lie in [0, {window / 2.0}) um")

    method = values["method"]
    if method in ("svd_fft", "svd_fd"):
        if "n_singular" not in values:
            raise ConfigError(
                f"{path}: missing required key 'n_singular' (method {method})"
            )
    if method == "fresnel":
        if "reference_index" not in values:
            raise ConfigError(
                f"{path}: missing required key 'reference_index' (method fresnel)"
            )
    if "n_singular" in values:
        limit = values["n_points"] ** 2
        constraint("n_singular", 1 <= values["n_singular"] <= limit,
                   f"n_singular must lie in [1, {limit}]")
    if "reference_index" in values:
        constraint("reference_index", values["reference_index"] > 0.0,
                   "reference_index must be positive")

    profile = ParabolicProfile(
        n0_squared=values["n0_squared"],
        depth=values["depth"],
        clamp_radius=values["clamp_radius"],
    )
    return SimConfig(
        n_points=values["n_points"],
        spacing=values["spacing"],
        wavelength=values["wavelength"],
        beam_width=values["beam_width"],
        beam_offset_x=values["beam_offset_x"],
        beam_offset_y=values["beam_offset_y"],
        profile=profile,
        method=method,
        n_singular=values.get("n_singular"),
        step_length=values["step_length"],
        n_steps=values["n_steps"],
        reference_index=values.get("reference_index"),
        absorber_margin=values["absorber_margin"],
        absorber_exponent=values["absorber_exponent"],
        absorber_every=values["absorber_every"],
        snapshot_every=values["snapshot_every"],
        output_dir=values["output_dir"],
    )
