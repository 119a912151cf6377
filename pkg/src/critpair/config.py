"""Run configuration: defaults, JSON config files, and validation.

A config file is a flat JSON object whose keys are exactly the field names
below.  Precedence is CLI flags over file values over defaults; validation
happens once on the merged result so every path through the CLI hits the
same checks.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .errors import ConfigError

EXPERIMENTS = ("pair", "clt", "conjecture", "cst-check", "selftest")
ENSEMBLE_KINDS = ("iid", "weyl", "ginibre")
DENSITIES = ("uniform_disk", "gaussian", "radial")
COEFF_LAWS = ("complex_normal", "real_normal")


@dataclass
class ExperimentConfig:
    """Everything a run needs; serialized verbatim into the manifest."""

    experiment: str = "pair"
    ensemble: str = "iid"
    density: str = "uniform_disk"
    n: int = 500
    trials: int = 100
    u0_re: float = 0.5
    u0_im: float = 0.0
    # r_n = n^{-r_exponent}; localization needs n r_n -> inf and
    # sqrt(n) r_n -> 0, so the exponent must sit strictly in (1/2, 1)
    r_exponent: float = 0.75
    R_grid: list[float] = field(default_factory=lambda: [0.5, 1.0, 1.5])
    exclusion_radius: float = 0.1
    master_seed: int = 20260822
    threads: int = 1
    output_dir: str = "critpair-out"
    # |z_n| = n^{-z_exponent} must decay faster than n^{-1/2}
    z_exponent: float = 0.6
    # chi normalization (n/log n)^gamma; 0.5 is the proven i.i.d. scale,
    # other values are for sweeping the open char-poly normalization
    chi_norm_exponent: float = 0.5
    weyl_max_degree: int = 200
    radial_cdf_path: str = ""
    coeff_law: str = "complex_normal"

    @property
    def u0(self) -> complex:
        return complex(self.u0_re, self.u0_im)

    def validate(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.ensemble not in ENSEMBLE_KINDS:
            raise ConfigError(f"unknown ensemble {self.ensemble!r}")
        if self.density not in DENSITIES:
            raise ConfigError(f"unknown density {self.density!r}")
        if self.density == "radial" and not self.radial_cdf_path:
            raise ConfigError("radial density requires radial_cdf_path")
        if self.coeff_law not in COEFF_LAWS:
            raise ConfigError(f"unknown coeff_law {self.coeff_law!r}")
        if self.n < 3:
            raise ConfigError("n must be >= 3")
        if self.trials < 0:
            raise ConfigError("trials must be >= 0")
        if not 0.5 < self.r_exponent < 1.0:
            raise ConfigError(
                "r_exponent must lie in (1/2, 1): the localization radius "
                "n^-a needs n^(1-a) -> inf and n^(1/2-a) -> 0"
            )
        if not self.z_exponent > 0.5:
            raise ConfigError(
                "z_exponent must exceed 1/2: the averaged-statistic limit "
                "requires |z_n| to decay faster than n^(-1/2)"
            )
        if self.chi_norm_exponent <= 0:
            raise ConfigError("chi_norm_exponent must be positive")
        if any(r < 0 for r in self.R_grid):
            raise ConfigError("R_grid entries must be nonnegative")
        if self.exclusion_radius < 0:
            raise ConfigError("exclusion_radius must be nonnegative")
        if not 0 <= self.master_seed < 1 << 64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.weyl_max_degree < 2:
            raise ConfigError("weyl_max_degree must be >= 2")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


_FIELD_NAMES = tuple(f.name for f in fields(ExperimentConfig))
_INT_FIELDS = {"n", "trials", "master_seed", "threads", "weyl_max_degree"}
_FLOAT_FIELDS = {
    "u0_re",
    "u0_im",
    "r_exponent",
    "exclusion_radius",
    "z_exponent",
    "chi_norm_exponent",
}


def _coerce(name: str, value):
    try:
        if name in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ConfigError(f"{name} must be an integer, got {value}")
            return int(value)
        if name in _FLOAT_FIELDS:
            return float(value)
        if name == "R_grid":
            return [float(v) for v in value]
        if not isinstance(value, str):
            raise ConfigError(f"{name} must be a string, got {value!r}")
        return value
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {name}: {value!r}") from exc


def load_config_file(path: str) -> dict:
    """Parse a flat JSON config; unknown keys are errors, not typos to ignore."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    out = {}
    for key, value in raw.items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown config key {key!r}")
        out[key] = _coerce(key, value)
    return out


def build_config(
    file_values: dict | None = None, cli_values: dict | None = None
) -> ExperimentConfig:
    """Merge defaults <- file <- CLI and validate the result."""
    merged: dict = {}
    for layer in (file_values or {}, cli_values or {}):
        for key, value in layer.items():
            if key not in _FIELD_NAMES:
                raise ConfigError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, value)
    return ExperimentConfig(**merged).validate()
