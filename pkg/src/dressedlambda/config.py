"""Strict loader for flat TOML run configurations.

Frequencies in the file are ordinary frequencies: ``omega_q``, ``omega_r``,
``omega_d`` and the probe / spectrum grids in GHz; ``g``, ``kappa``,
``gamma``, ``rabi`` and the Rabi grid in MHz. They are converted to angular
units exactly once, here.
"""
import hashlib
import json
import os
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .errors import ConfigError, InvalidParameters, MissingKey, TypeMismatch, UnknownKey
from .model import SystemParams, ghz, mhz

PHYSICAL = ("omega_q", "omega_r", "g", "kappa", "gamma", "omega_d")
GHZ_KEYS = {"omega_q", "omega_r", "omega_d", "probe", "probe_start", "probe_stop",
            "freq_start", "freq_stop"}
MHZ_KEYS = {"g", "kappa", "gamma", "rabi", "rabi_start", "rabi_stop", "bracket_lo",
            "bracket_hi"}
COUNT_KEYS = {"rabi_count", "probe_count", "freq_count"}

SCHEMA = {
    **{k: "float" for k in GHZ_KEYS | MHZ_KEYS},
    **{k: "int" for k in COUNT_KEYS},
    "n_max": "int",
    "workers": "int",
    "probe_flux": "float",
    "probe_fluxes": "floats",
    "experiment": "str",
    "out_dir": "str",
}
EXPERIMENTS = ("levels", "rates", "match", "reflect", "spectrum", "efficiency", "validate")
MAX_CELLS = 10 ** 6


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    count: int

    def values(self):
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    raw: dict
    sha256: str
    workers: int = 0
    experiment: str = None
    out_dir: str = None
    extras: dict = field(default_factory=dict)

    def require(self, key):
        if key not in self.raw:
            raise MissingKey(f"missing key '{key}' required by this experiment", key)
        return self.extras[key]

    def optional(self, key, default=None):
        return self.extras.get(key, default)

    def grid(self, prefix):
        g = Grid(self.require(f"{prefix}_start"), self.require(f"{prefix}_stop"),
                 self.require(f"{prefix}_count"))
        return g.values()


def _check_type(key, value, kind):
    ok = {
        "float": isinstance(value, (int, float)) and not isinstance(value, bool),
        "int": isinstance(value, int) and not isinstance(value, bool),
        "str": isinstance(value, str),
        "floats": isinstance(value, list) and len(value) > 0 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value),
    }[kind]
    if not ok:
        raise TypeMismatch(f"key '{key}' must be of type {kind}, got {type(value).__name__}", key)


def _convert(key, value):
    if key in GHZ_KEYS:
        return ghz(float(value))
    if key in MHZ_KEYS:
        return mhz(float(value))
    if SCHEMA[key] == "floats":
        return [float(v) for v in value]
    if SCHEMA[key] == "float":
        return float(value)
    return value


def parse_config(raw):
    """Validate a parsed mapping and build a :class:`RunConfig`."""
    for key, value in raw.items():
        if isinstance(value, dict):
            raise TypeMismatch(f"key '{key}': nested tables are not allowed", key)
        if key not in SCHEMA:
            raise UnknownKey(f"unknown key '{key}'", key)
        _check_type(key, value, SCHEMA[key])
    for key in PHYSICAL:
        if key not in raw:
            raise MissingKey(f"missing required key '{key}'", key)

    extras = {k: _convert(k, v) for k, v in raw.items()}
    for key in COUNT_KEYS:
        if key in raw and raw[key] < 1:
            raise ConfigError(f"key '{key}' must be >= 1", key)
    # rabi x probe is the only two-axis sweep; the spectrum grid stands alone
    for keys in (("rabi_count", "probe_count"), ("freq_count",)):
        cells = int(np.prod([raw.get(k, 1) for k in keys]))
        if cells > MAX_CELLS:
            raise ConfigError(f"grid has {cells} cells, limit is {MAX_CELLS}", keys[-1])
    for prefix in ("rabi", "probe", "freq"):
        lo, hi = raw.get(f"{prefix}_start"), raw.get(f"{prefix}_stop")
        if lo is not None and hi is not None and hi < lo:
            raise ConfigError(f"grid '{prefix}' must be ascending", f"{prefix}_stop")
    if "experiment" in raw and raw["experiment"] not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{raw['experiment']}'", "experiment")

    try:
        params = SystemParams(
            omega_q=extras["omega_q"], omega_r=extras["omega_r"], g=extras["g"],
            kappa=extras["kappa"], gamma=extras["gamma"], omega_d=extras["omega_d"],
            n_max=raw.get("n_max", 4),
        )
    except InvalidParameters as exc:
        raise ConfigError(str(exc)) from exc
    if "rabi" in extras:
        params = params.with_rabi(extras["rabi"])

    digest = hashlib.sha256(json.dumps(raw, sort_keys=True).encode()).hexdigest()
    return RunConfig(params=params, raw=dict(raw), sha256=digest,
                     workers=raw.get("workers", 0), experiment=raw.get("experiment"),
                     out_dir=raw.get("out_dir"), extras=extras)


def load_config(path):
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, "rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(raw)
