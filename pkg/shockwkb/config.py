"""
shockwkb Configuration Module.

Problem files are YAML (or JSON, which YAML reads unchanged) validated by
pydantic models that reject unknown keys.
"""

import math
import os
from pathlib import Path
from typing import List, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from shockwkb.asymptotics.problem import Background, BurgersProblem, CoefficientSeries, Grid, Window
from shockwkb.constants import (
    BACKGROUND_EXPRESSIONS,
    BACKGROUND_ZERO,
    COMPATIBILITY_TOLERANCE,
    COND_V1_TOLERANCE,
    DECAY_TOLERANCE,
    DEFAULT_NT,
    DEFAULT_NX,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_T_RANGE,
    DEFAULT_X_RANGE,
    OUTPUT_DIR_ENV,
    REGION_GLOBAL,
    SOLVABILITY_TOLERANCE,
    TRANSPORT_TOLERANCE,
)
from shockwkb.exceptions import ConfigurationError, ParseError
from shockwkb.exprlang import parse
from shockwkb.verification.refsolve import RefSolverConfig


def _check_expression(text: str) -> str:
    try:
        parse(text)
    except ParseError as e:
        raise ValueError(f"cannot parse '{text}': {e}")
    return text


class CoefficientsConfig(BaseModel):
    """Coefficient series a_0..a_N and b_0..b_N as expression strings."""

    model_config = ConfigDict(extra="forbid")

    a: List[str] = Field(min_length=1, description="a_0, a_1, ... in x and t")
    b: List[str] = Field(min_length=1, description="b_0, b_1, ... in x and t")

    @field_validator("a", "b")
    @classmethod
    def validate_expressions(cls, v: List[str]) -> List[str]:
        return [_check_expression(text) for text in v]


class BackgroundConfig(BaseModel):
    """Regular part: zero, or user expressions u_0, u_1, ..."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["zero", "expressions"] = BACKGROUND_ZERO
    u: List[str] = Field(default_factory=list, description="u_0, u_1, ... for type 'expressions'")

    @field_validator("u")
    @classmethod
    def validate_expressions(cls, v: List[str]) -> List[str]:
        return [_check_expression(text) for text in v]

    @model_validator(mode="after")
    def validate_terms(self) -> "BackgroundConfig":
        if self.type == BACKGROUND_EXPRESSIONS and not self.u:
            raise ValueError("background type 'expressions' needs at least u_0")
        if self.type == BACKGROUND_ZERO and self.u:
            raise ValueError("background type 'zero' takes no expressions")
        return self

    def to_background(self) -> Background:
        if self.type == BACKGROUND_ZERO:
            return Background.zero()
        return Background.from_texts(self.u)


class FrontConfig(BaseModel):
    """Discontinuity curve parameters."""

    model_config = ConfigDict(extra="forbid")

    rho: float = Field(description="Nonzero constant of the front ODE")
    phi0: float = Field(default=0.0, description="phi(0)")

    @field_validator("rho")
    @classmethod
    def validate_rho(cls, v: float) -> float:
        if v == 0 or not math.isfinite(v):
            raise ValueError("rho must be finite and nonzero")
        return v


class TimeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t0: float = Field(default=DEFAULT_T_RANGE[0], description="Start time (must be 0)")
    t1: float = Field(default=DEFAULT_T_RANGE[1], gt=0, description="End time T")

    @field_validator("t0")
    @classmethod
    def validate_t0(cls, v: float) -> float:
        if v != 0:
            raise ValueError("time.t0 must be 0; the front is integrated forward from t = 0")
        return v


class GridConfig(BaseModel):
    """Figure grid; also the working window in x."""

    model_config = ConfigDict(extra="forbid")

    x_min: float = DEFAULT_X_RANGE[0]
    x_max: float = DEFAULT_X_RANGE[1]
    nx: int = Field(default=DEFAULT_NX, ge=1, description="Samples in x")
    nt: int = Field(default=DEFAULT_NT, ge=1, description="Samples in t")

    @model_validator(mode="after")
    def validate_range(self) -> "GridConfig":
        if not self.x_min < self.x_max:
            raise ValueError(f"grid.x_min={self.x_min} must be less than grid.x_max={self.x_max}")
        return self


class TolerancesConfig(BaseModel):
    """Overrides for the pass/fail thresholds of the condition report."""

    model_config = ConfigDict(extra="forbid")

    solvability: float = Field(default=SOLVABILITY_TOLERANCE, gt=0)
    compatibility: float = Field(default=COMPATIBILITY_TOLERANCE, gt=0)
    cond_v1: float = Field(default=COND_V1_TOLERANCE, gt=0)
    decay: float = Field(default=DECAY_TOLERANCE, gt=0)
    transport: float = Field(default=TRANSPORT_TOLERANCE, gt=0)


class ProblemConfig(BaseModel):
    """Complete problem file."""

    model_config = ConfigDict(extra="forbid")

    coefficients: CoefficientsConfig
    background: BackgroundConfig = Field(default_factory=BackgroundConfig)
    front: FrontConfig
    epsilon: List[float] = Field(min_length=1, description="Strictly decreasing eps values")
    tail_epsilon: Optional[List[float]] = Field(
        default=None, min_length=1, description="Smaller eps values for the left/right tail studies"
    )
    c1: float = Field(default=0.0, description="Integration constant of v_1")
    time: TimeConfig = Field(default_factory=TimeConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    tolerances: TolerancesConfig = Field(default_factory=TolerancesConfig)
    refsolve: RefSolverConfig = Field(default_factory=RefSolverConfig)
    initial_profile: Optional[str] = Field(
        default=None, description="f(x) for the characteristics solver of u_0"
    )

    @field_validator("epsilon", "tail_epsilon")
    @classmethod
    def validate_epsilon(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is None:
            return v
        if any(eps <= 0 for eps in v):
            raise ValueError(f"epsilon values must be positive: {v}")
        if any(later >= earlier for earlier, later in zip(v, v[1:])):
            raise ValueError(f"epsilon values must be strictly decreasing: {v}")
        return v

    @field_validator("c1")
    @classmethod
    def validate_c1(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("c1 must be finite")
        return v

    @field_validator("initial_profile")
    @classmethod
    def validate_profile(cls, v: Optional[str]) -> Optional[str]:
        return _check_expression(v) if v is not None else v

    def to_problem(self) -> BurgersProblem:
        """Build the immutable problem; window = [x_min, x_max] x [0, t1]."""
        return BurgersProblem(
            coefficients=CoefficientSeries.from_texts(self.coefficients.a, self.coefficients.b),
            background=self.background.to_background(),
            epsilon_ladder=tuple(self.epsilon),
            window=Window(self.grid.x_min, self.grid.x_max, self.time.t1),
        )

    def ladder_for(self, region: str) -> List[float]:
        """Tail regions use tail_epsilon when given, everything else epsilon."""
        if region != REGION_GLOBAL and self.tail_epsilon is not None:
            return self.tail_epsilon
        return self.epsilon

    def figure_grid(self) -> Grid:
        return Grid.uniform(
            self.grid.x_min, self.grid.x_max, self.grid.nx, self.time.t0, self.time.t1, self.grid.nt
        )


def load_config(config_path: str) -> ProblemConfig:
    """
    Load a problem configuration from file.

    Args:
        config_path: Path to a YAML or JSON problem file

    Returns:
        ProblemConfig instance

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    config_file = Path(config_path)

    if not config_file.exists():
        raise ConfigurationError(f"Configuration file not found: {config_path}")

    try:
        with open(config_file, "r", encoding="utf-8") as f:
            config_data = yaml.safe_load(f)

        if not isinstance(config_data, dict):
            raise ConfigurationError(f"Configuration must be a mapping, got {type(config_data).__name__}")

        return ProblemConfig(**config_data)

    except ConfigurationError:
        raise
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in config file: {e}")
    except Exception as e:
        raise ConfigurationError(f"Failed to load config: {e}")


def validate_config_file(config_path: str) -> bool:
    """
    Validate configuration file.

    Raises:
        ConfigurationError: If invalid
    """
    load_config(config_path)
    return True


def resolve_output_dir(cli_value: Optional[str] = None) -> Path:
    """--out, else $SHOCKWKB_OUT_DIR (a .env file is honoured by the entry points), else ./output."""
    return Path(cli_value or os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR)
