"""Experiment configuration: flat ``key = value`` text with section headers.

The default configuration reproduces the setting of the classic example
``gamma(y) = min(1/2 + y/4, 0.9)`` on the time interval ``[0, 3]``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .sde import GammaSpec, z_max_from_u_min

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    pass


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return ",".join(repr(float(v)) for v in x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


# (section, key, field name)
_LAYOUT = [
    ("gamma", "breakpoints", "gamma_breakpoints"),
    ("gamma", "epsilon", "epsilon"),
    ("simulation", "horizon", "horizon"),
    ("simulation", "z_max", "z_max"),
    ("simulation", "u_min", "u_min"),
    ("simulation", "seed", "seed"),
    ("simulation", "sample_points", "sample_points"),
    ("diagnose", "grid_resolution", "grid_resolution"),
    ("diagnose", "j_lo", "j_lo"),
    ("diagnose", "j_hi", "j_hi"),
    ("diagnose", "j_window", "j_window"),
    ("diagnose", "delta_cap", "delta_cap"),
    ("diagnose", "n_times", "n_times"),
    ("diagnose", "deltas", "deltas"),
    ("spectrum", "a", "a"),
    ("spectrum", "b", "b"),
    ("spectrum", "h_grid", "h_grid"),
    ("spectrum", "local_times", "local_times"),
    ("spectrum", "coarse_j", "coarse_j"),
    ("spectrum", "bin_width", "bin_width"),
    ("tangent", "t0", "t0"),
    ("tangent", "alphas", "tangent_alphas"),
    ("tangent", "n", "tangent_n"),
    ("output", "dir", "out_dir"),
]


@dataclass(frozen=True)
class ExperimentConfig:
    gamma_breakpoints: str = "0.0:0.5,1.6:0.9"
    epsilon: float = 0.05
    horizon: float = 3.0
    z_max: float | None = 16384.0
    u_min: float | None = None
    seed: int = 2024
    sample_points: int = 3000
    grid_resolution: int = 10_000
    j_lo: int = 6
    j_hi: int = 14
    j_window: int = 1
    delta_cap: float = 16.0
    n_times: int = 1000
    deltas: tuple = (1.0, 1.25, 1.5, 2.0)
    a: float = 0.0
    b: float = 3.0
    h_grid: tuple = (0.0, 2.5, 251.0)  # start, stop, count
    local_times: tuple = (0.5, 1.5)
    coarse_j: int = 14
    bin_width: float = 0.05
    t0: float = 0.0
    tangent_alphas: tuple = (0.1, 0.01, 0.001)
    tangent_n: int = 5000
    out_dir: str = "out"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if (self.z_max is None) == (self.u_min is None):
            raise ConfigError("exactly one of z_max and u_min must be set")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise ConfigError("horizon must be positive")
        if self.z_max is not None and not (math.isfinite(self.z_max) and self.z_max >= 0):
            raise ConfigError("z_max must be nonnegative")
        if self.u_min is not None and not 0 < self.u_min < 1:
            raise ConfigError("u_min must lie in (0, 1)")
        if not self.j_lo < self.j_hi:
            raise ConfigError("need j_lo < j_hi")
        if not 0 <= self.a < self.b <= self.horizon:
            raise ConfigError("need 0 <= a < b <= horizon")
        if len(self.h_grid) != 3 or self.h_grid[2] < 2 or self.h_grid[0] < 0:
            raise ConfigError("h_grid is 'start,stop,count' with count >= 2")
        if self.tangent_n < 1:
            raise ConfigError("tangent n must be positive")
        if any(np.diff(self.tangent_alphas) >= 0):
            raise ConfigError("tangent alphas must be strictly decreasing")
        try:
            self.gamma()
        except ValueError as exc:
            raise ConfigError(f"invalid gamma: {exc}") from exc

    def gamma(self) -> GammaSpec:
        return GammaSpec.parse(self.gamma_breakpoints, self.epsilon)

    def truncation(self) -> float:
        if self.z_max is not None:
            return self.z_max
        return z_max_from_u_min(self.u_min, self.epsilon)

    def h_values(self) -> np.ndarray:
        start, stop, count = self.h_grid
        return np.linspace(start, stop, int(count))

    def with_seed(self, seed: int | None) -> "ExperimentConfig":
        return self if seed is None else replace(self, seed=int(seed))

    def to_text(self) -> str:
        sections: dict[str, list[str]] = {}
        for sec, key, name in _LAYOUT:
            val = getattr(self, name)
            if val is None:
                continue
            sections.setdefault(sec, []).append(f"{key} = {_fmt(val)}")
        return "\n".join(f"[{sec}]\n" + "\n".join(lines) + "\n"
                         for sec, lines in sections.items())


_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _convert(name: str, raw: str):
    kind = _TYPES[name]
    if kind == "tuple":
        return _floats(raw)
    if kind == "int":
        return int(raw)
    if kind in ("float", "float | None"):
        return float(raw)
    return raw.strip()


def parse_config(text: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    known = {(sec, key): name for sec, key, name in _LAYOUT}
    kwargs = {}
    for sec in parser.sections():
        for key, raw in parser.items(sec):
            if (sec, key) not in known:
                raise ConfigError(f"unknown key [{sec}] {key}")
            name = known[(sec, key)]
            try:
                kwargs[name] = _convert(name, raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for [{sec}] {key}: {raw!r}") from exc
    if "u_min" in kwargs and "z_max" not in kwargs:
        kwargs["z_max"] = None
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
