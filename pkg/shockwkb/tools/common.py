"""
Common utilities for the shockwkb commands.

Atomic CSV/JSON writers, the shared front -> frame -> solution pipeline and
uniform error handling that maps package errors to exit codes.
"""

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

from shockwkb.asymptotics.characteristics import solve_u0_characteristics
from shockwkb.asymptotics.front import FrontCurve, solve_front
from shockwkb.asymptotics.layer import AlphaSet, WaveFrame, alphas, build_frame
from shockwkb.asymptotics.problem import BurgersProblem, Grid, SampledField
from shockwkb.asymptotics.solution import AsymptoticSolution, assemble
from shockwkb.config import ProblemConfig
from shockwkb.constants import CSV_FLOAT_FORMAT, EXIT_CONFIG_ERROR, EXIT_NUMERIC_FAILURE
from shockwkb.error_formatter import ErrorFormatter, log_structured_error
from shockwkb.exceptions import ShockWKBError
from shockwkb.exprlang import parse

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """CSV cell: floats with 17 significant digits, everything else via str."""
    if isinstance(value, float):
        return format(value, CSV_FLOAT_FORMAT)
    return str(value)


def _write_atomic(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """
    Write a CSV file atomically (temp file + rename).

    Args:
        path: Destination
        header: Column names
        rows: Row tuples; floats printed with 17 significant digits

    Returns:
        The written path
    """
    lines = [",".join(header)]
    lines.extend(",".join(format_value(cell) for cell in row) for row in rows)
    written = _write_atomic(path, "\n".join(lines) + "\n")
    logger.info(f"Wrote {written} ({len(lines) - 1} rows)")
    return written


def write_json(path: Path, data: Dict[str, Any]) -> Path:
    """Write a JSON report atomically with sorted keys."""
    text = json.dumps(data, indent=2, sort_keys=True, allow_nan=False)
    written = _write_atomic(path, text + "\n")
    logger.info(f"Wrote {written}")
    return written


def eps_label(eps: float) -> str:
    return format(eps, "g")


def trace_initial_profile(
    config: ProblemConfig, problem: BurgersProblem, grid: Optional[Grid] = None
) -> Optional[SampledField]:
    """
    u0 traced along characteristics from config.initial_profile.

    Returns None when no profile is configured. The default grid is the
    figure grid.

    Raises:
        GradientCatastropheError: Characteristics cross inside the grid's time range
    """
    if config.initial_profile is None:
        return None
    grid = grid or config.figure_grid()
    return solve_u0_characteristics(problem, parse(config.initial_profile), grid)


@dataclass
class Pipeline:
    """Objects built from one configuration."""

    config: ProblemConfig
    problem: BurgersProblem
    curve: FrontCurve
    frame: WaveFrame
    alpha_set: AlphaSet

    def solution(self, order: int) -> AsymptoticSolution:
        return assemble(
            self.problem, self.curve, self.frame, order, self.config.c1, alpha_set=self.alpha_set
        )

    def characteristic_u0(self, grid: Optional[Grid] = None) -> Optional[SampledField]:
        return trace_initial_profile(self.config, self.problem, grid)


def build_pipeline(config: ProblemConfig) -> Pipeline:
    """Problem, front, frame and alpha coefficients for a configuration."""
    problem = config.to_problem()
    curve = solve_front(problem, config.front.rho, config.front.phi0)
    frame = build_frame(problem, curve)
    return Pipeline(config, problem, curve, frame, alphas(problem, curve, frame))


def handle_command_error(error: Exception, command: str, context: Optional[Dict[str, Any]] = None) -> int:
    """
    Log and print an error consistently across commands.

    Returns:
        The exit code for the error (2 config, 3 condition, 4 numeric)
    """
    if isinstance(error, ShockWKBError):
        message = ErrorFormatter.format_shockwkb_error(error, component=command)
        exit_code = error.exit_code
    else:
        message = ErrorFormatter.format_error_message(
            error_type=type(error).__name__,
            component=command,
            details=str(error),
            context=context,
        )
        exit_code = EXIT_CONFIG_ERROR if isinstance(error, ValueError) else EXIT_NUMERIC_FAILURE
    log_structured_error(logger, error, component=command, context=context, level=logging.DEBUG)
    print(f"❌ {message}")
    return exit_code
