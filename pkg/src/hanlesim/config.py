"""Scan configuration: a JSON document validated by pydantic models.

The same model is the body schema of the HTTP scan endpoint, so a config
file and a scan request are literally the same object.  A run is specified
either by a preset name or by explicit transition parameters, plus a
static-field grid and optional detuning averaging.  Everything is
deterministic; there is no randomness anywhere in a scan.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .angular import AngularState
from .errors import ConfigError, ParameterError
from .liouvillian import SystemParams
from .presets import B1_GAMMA_FRACTION, get_preset

OutputQuantity = Literal["static", "inphase", "quadrature"]


class TransitionSettings(BaseModel):
    """Explicit transition parameters (rates in units of the decay rate)."""

    model_config = ConfigDict(extra="forbid")

    fg: float
    fe: float
    gg: float
    ge: float
    rabi: float = Field(default=0.01, ge=0.0)
    detuning: float = 0.0
    gamma: float = Field(gt=0.0)
    gamma_coll: float = Field(default=0.0, ge=0.0)
    branching: float = Field(ge=0.0, le=1.0)
    mod_freq: float = Field(gt=0.0)
    b1: Optional[float] = Field(default=None, description="defaults to 0.1*gamma")


class ScanAxis(BaseModel):
    """Static-field grid in Larmor units."""

    model_config = ConfigDict(extra="forbid")

    min: float
    max: float
    count: int = Field(ge=2)

    @model_validator(mode="after")
    def _ordered(self):
        if not self.min < self.max:
            raise ValueError(f"scan.min must be < scan.max, got [{self.min}, {self.max}]")
        return self


class DopplerSettings(BaseModel):
    """Detuning averaging over [-half_range, +half_range]."""

    model_config = ConfigDict(extra="forbid")

    enabled: bool = False
    half_range: float = Field(default=5.0, gt=0.0)
    n_points: int = Field(default=41, ge=3)

    @model_validator(mode="after")
    def _odd(self):
        if self.n_points % 2 == 0:
            raise ValueError(f"doppler.n_points must be odd, got {self.n_points}")
        return self


class ScanConfig(BaseModel):
    """One scan: transition, field grid, averaging, outputs and weight."""

    model_config = ConfigDict(extra="forbid")

    preset: Optional[str] = None
    params: Optional[TransitionSettings] = None
    scan: ScanAxis
    doppler: DopplerSettings = Field(default_factory=DopplerSettings)
    outputs: list[OutputQuantity] = Field(
        default_factory=lambda: ["static", "inphase", "quadrature"],
        min_length=1,
    )
    weight: Optional[float] = Field(default=None, gt=0.0)
    output: str = "scan.csv"

    @model_validator(mode="after")
    def _one_source(self):
        if (self.preset is None) == (self.params is None):
            raise ValueError("exactly one of 'preset' and 'params' must be given")
        return self

    def system_params(self) -> SystemParams:
        if self.preset is not None:
            return get_preset(self.preset).params
        s = self.params
        try:
            state = AngularState(fg=s.fg, fe=s.fe, gg=s.gg, ge=s.ge)
            return SystemParams(
                state=state,
                rabi=s.rabi,
                detuning=s.detuning,
                gamma=s.gamma,
                gamma_coll=s.gamma_coll,
                branching=s.branching,
                b0=0.0,
                b1=s.b1 if s.b1 is not None else B1_GAMMA_FRACTION * s.gamma,
                mod_freq=s.mod_freq,
            )
        except (ValueError, ParameterError) as exc:
            raise ConfigError(f"params: {exc}") from exc

    def effective_weight(self) -> float:
        if self.weight is not None:
            return self.weight
        if self.preset is not None:
            return get_preset(self.preset).weight
        return 1.0


def _format_validation_error(exc: ValidationError) -> str:
    first = exc.errors()[0]
    loc = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"field '{loc}': {first['msg']}"


def parse_config(data: dict) -> ScanConfig:
    """Validate a decoded JSON document; ConfigError names the bad field."""
    try:
        return ScanConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc


def load_config(path: str | Path) -> ScanConfig:
    """Read and validate a JSON config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return parse_config(data)
