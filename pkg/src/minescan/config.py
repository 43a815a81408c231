"""Flat key = value configuration shared by the CLI commands.

Defaults follow the operating point reported for the original system:
segmentation threshold 85, one hidden layer of 90 units, momentum 0.2,
learning rate 0.01, MSE target 1e-5. A config file may override any
subset; command-line flags override the file; unknown keys are errors.
The MINESCAN_CONFIG environment variable names a default config file.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .color import AGGREGATES, FeatureParams
from .mlp import TrainParams
from .segment import SegParams

__all__ = ["Config", "ConfigError", "parse_config", "render_config",
           "load_config", "ENV_CONFIG"]

ENV_CONFIG = "MINESCAN_CONFIG"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    filter_kind: str = "mean"
    threshold: float = 85.0
    spatial_weight: float = 1.0
    max_iter: int = 100
    max_k: int = 32
    blank_level: int = 0
    aggregate: str = "mean"
    hue_weight: float = 0.5
    scale_factor: float = 64.0
    bias: float = 1.0
    hidden_sizes: tuple = (90,)
    slope: float = 1.0
    learning_rate: float = 0.01
    momentum: float = 0.2
    mse_target: float = 1e-5
    max_epochs: int = 20000
    divergence_window: int = 50
    rng_seed: int = 0

    def seg_params(self) -> SegParams:
        return SegParams(self.threshold, self.spatial_weight,
                         self.max_iter, self.max_k)

    def feature_params(self) -> FeatureParams:
        return FeatureParams(self.aggregate, self.hue_weight,
                             self.scale_factor, self.bias)

    def train_params(self) -> TrainParams:
        return TrainParams(self.learning_rate, self.momentum, self.mse_target,
                           self.max_epochs, self.divergence_window,
                           self.rng_seed)


_VALID_FILTERS = ("mean", "median", "gaussian", "none")


def _check(cfg: Config) -> Config:
    c = cfg
    if c.filter_kind not in _VALID_FILTERS:
        raise ConfigError(f"filter_kind must be one of {_VALID_FILTERS}")
    if c.aggregate not in AGGREGATES:
        raise ConfigError(f"aggregate must be one of {AGGREGATES}")
    if not 0.0 <= c.hue_weight <= 1.0:
        raise ConfigError("hue_weight must be in [0, 1]")
    if c.threshold < 0 or c.spatial_weight < 0 or c.blank_level < 0:
        raise ConfigError("threshold, spatial_weight, blank_level must be >= 0")
    if c.max_iter < 1 or c.max_k < 1 or c.max_epochs < 1 or c.divergence_window < 1:
        raise ConfigError("iteration and size limits must be >= 1")
    if c.scale_factor <= 0 or c.slope <= 0 or c.learning_rate <= 0 or c.mse_target <= 0:
        raise ConfigError("scale_factor, slope, learning_rate, mse_target must be > 0")
    if not 0.0 <= c.momentum < 1.0:
        raise ConfigError("momentum must be in [0, 1)")
    if len(c.hidden_sizes) < 1 or any(s < 1 for s in c.hidden_sizes):
        raise ConfigError("hidden_sizes needs at least one positive size")
    return c


def _parse_value(name: str, text: str, default):
    text = text.strip()
    try:
        if name == "hidden_sizes":
            return tuple(int(p) for p in text.replace(",", " ").split())
        if isinstance(default, bool):
            raise AssertionError  # no boolean keys today
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        return text
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {text!r}") from exc


def parse_config(text: str, base: Config | None = None) -> Config:
    """Parse `key = value` lines ('#' comments allowed) over defaults."""
    cfg = base or Config()
    fields = {f.name: f for f in dataclasses.fields(Config)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in fields:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        updates[key] = _parse_value(key, value, getattr(cfg, key))
    return _check(dataclasses.replace(cfg, **updates))


def render_config(cfg: Config) -> str:
    """Write every field back out; parse(render(c)) == c."""
    lines = []
    for f in dataclasses.fields(Config):
        v = getattr(cfg, f.name)
        if f.name == "hidden_sizes":
            v = ",".join(str(s) for s in v)
        elif isinstance(v, float):
            v = repr(v)
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"


def load_config(path=None, overrides: dict | None = None) -> Config:
    """Config from an explicit file, else $MINESCAN_CONFIG, else defaults."""
    if path is None:
        path = os.environ.get(ENV_CONFIG) or None
    if path is not None:
        try:
            with open(path) as fh:
                cfg = parse_config(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    else:
        cfg = Config()
    if overrides:
        unknown = set(overrides) - {f.name for f in dataclasses.fields(Config)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = _check(dataclasses.replace(cfg, **overrides))
    return cfg
