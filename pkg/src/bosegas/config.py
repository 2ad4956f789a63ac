"""Run configuration: flat key = value sections, round-trippable and strict.

A config names one subcommand plus its parameter bindings; every CLI flag
mirrors a config key, so a run is fully reproducible from the serialized
config alone.  Unknown keys are rejected by name.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

__all__ = ["ConfigError", "RunConfig", "SweepSpec", "parse_config",
           "parse_config_file", "serialize_config", "SECTION_KEYS"]


class ConfigError(ValueError):
    pass


SUBCOMMANDS = ("scatter", "bounds", "gp", "jellium", "sweep")

SECTION_KEYS = {
    "run": {"subcommand", "out", "format", "seed", "precision"},
    "potential": {"kind", "radius", "height", "range", "amplitude", "eps", "r", "v"},
    "scatter": {"dimension", "r_max", "n_points"},
    "bounds": {"Y", "exponents", "constants", "gap_convention"},
    "gp": {"dimension", "trap", "k", "side", "N", "a", "mode", "grid"},
    "jellium": {"rho", "rs"},
    "sweep": {"of", "variable", "range", "jobs"},
}

_RUN_DEFAULTS = {"format": "json", "seed": "0", "precision": "double"}


@dataclass
class RunConfig:
    """Parsed configuration: one [run] section plus per-subcommand sections."""

    subcommand: str
    sections: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"
    seed: int = 0
    precision: str = "double"

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.precision not in ("double", "extended"):
            raise ConfigError(f"unknown precision {self.precision!r}")
        for name, mapping in self.sections.items():
            allowed = SECTION_KEYS.get(name)
            if allowed is None:
                raise ConfigError(f"unknown section [{name}]")
            for key in mapping:
                if key not in allowed:
                    raise ConfigError(f"unknown key {key!r} in section [{name}]")

    def section(self, name: str) -> dict:
        return dict(self.sections.get(name, {}))

    def get(self, section: str, key: str, default=None) -> str | None:
        return self.sections.get(section, {}).get(key, default)


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a linear or geometric range, count >= 2."""

    variable: str
    mode: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.mode not in ("linear", "geometric"):
            raise ConfigError(f"unknown range mode {self.mode!r}")
        if self.count < 2:
            raise ConfigError("sweep needs count >= 2")
        if self.mode == "geometric" and (self.start <= 0 or self.stop <= 0):
            raise ConfigError("geometric range needs positive endpoints")

    @classmethod
    def parse(cls, variable: str, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"range must be mode:start:stop:count, got {text!r}")
        mode, start, stop, count = parts
        try:
            return cls(variable=variable, mode=mode, start=float(start),
                       stop=float(stop), count=int(count))
        except ValueError as exc:
            raise ConfigError(f"bad range {text!r}: {exc}") from exc

    def values(self) -> list:
        import numpy as np
        if self.mode == "linear":
            return [float(x) for x in np.linspace(self.start, self.stop, self.count)]
        return [float(x) for x in np.geomspace(self.start, self.stop, self.count)]


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser()
    cp.optionxform = str          # keys are case-sensitive (Y, N, ...)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    if "run" not in cp or "subcommand" not in cp["run"]:
        raise ConfigError("config needs a [run] section with a subcommand key")
    run = dict(cp["run"])
    sections = {name: dict(cp[name]) for name in cp.sections() if name != "run"}
    merged_run = dict(_RUN_DEFAULTS)
    merged_run.update(run)
    try:
        seed = int(merged_run["seed"])
    except ValueError as exc:
        raise ConfigError(f"seed must be an integer: {merged_run['seed']!r}") from exc
    extra = set(run) - SECTION_KEYS["run"]
    if extra:
        raise ConfigError(f"unknown key {sorted(extra)[0]!r} in section [run]")
    return RunConfig(subcommand=merged_run["subcommand"], sections=sections,
                     out=merged_run.get("out"), format=merged_run["format"],
                     seed=seed, precision=merged_run["precision"])


def parse_config_file(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc


def serialize_config(config: RunConfig) -> str:
    """Canonical text form; parse(serialize(c)) == c."""
    cp = configparser.ConfigParser()
    cp.optionxform = str
    cp["run"] = {}
    cp["run"]["subcommand"] = config.subcommand
    if config.out is not None:
        cp["run"]["out"] = config.out
    cp["run"]["format"] = config.format
    cp["run"]["seed"] = str(config.seed)
    cp["run"]["precision"] = config.precision
    for name in sorted(config.sections):
        cp[name] = {}
        for key in sorted(config.sections[name]):
            cp[name][key] = str(config.sections[name][key])
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()
