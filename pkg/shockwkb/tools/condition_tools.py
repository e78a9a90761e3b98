"""
Condition report: every precondition of the zeroth and first approximation,
measured and compared against its tolerance.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from shockwkb.asymptotics.front import check_compatibility, solve_front
from shockwkb.asymptotics.layer import (
    V0Term,
    V1Term,
    alphas,
    build_frame,
    check_cond_v1,
    check_membership,
    check_solvability,
)
from shockwkb.asymptotics.problem import BurgersProblem, check_regular_residual, sampled_transport_residual
from shockwkb.config import ProblemConfig
from shockwkb.constants import (
    EXIT_CONDITION_FAILURE,
    EXIT_SUCCESS,
    NONZERO_TOLERANCE,
    REPORT_SCHEMA_VERSION,
)
from shockwkb.exceptions import ConditionError, GradientCatastropheError, NumericalError, ShockWKBError
from shockwkb.exprlang import evaluate
from shockwkb.tools.common import trace_initial_profile, write_json

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

# Items that depend on the front, then on the wave frame
LAYER_ITEMS = (
    "solvability_alpha1",
    "solvability_alpha2",
    "solvability_alpha3",
    "solvability_alpha4",
    "cond_v1",
    "layer_decay_v0",
    "layer_decay_v1",
)
FRONT_ITEMS = ("compatibility", "b0_x", "beta_positive") + LAYER_ITEMS


class ConditionReport:
    """Ordered PASS/FAIL/SKIP items with measured values."""

    def __init__(self):
        self.items: Dict[str, Dict[str, Any]] = {}

    def measure(self, name: str, value: float, tolerance: float, below: bool = True) -> bool:
        ok = value <= tolerance if below else value > tolerance
        self.items[name] = {"value": value, "tolerance": tolerance, "status": PASS if ok else FAIL}
        return ok

    def fail(self, name: str, error: Exception) -> None:
        self.items[name] = {
            "status": FAIL,
            "code": getattr(error, "code", type(error).__name__),
            "detail": str(error),
        }

    def skip(self, name: str, reason: str) -> None:
        self.items[name] = {"status": SKIP, "detail": reason}

    @property
    def passed(self) -> bool:
        return all(item["status"] != FAIL for item in self.items.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "items": self.items,
            "passed": self.passed,
        }


def _check_characteristics(config: ProblemConfig, problem: BurgersProblem, report: ConditionReport) -> None:
    """Trace the initial profile; transport residual and, with a background, agreement with it."""
    if config.initial_profile is None:
        report.skip("characteristics", "no initial_profile configured")
        return
    tolerance = config.tolerances.transport
    try:
        traced = trace_initial_profile(config, problem)
    except NumericalError as e:
        report.fail("characteristics", e)
        if isinstance(e, GradientCatastropheError):
            report.items["characteristics"]["time"] = e.time
        return
    report.measure("characteristics", sampled_transport_residual(problem, traced), tolerance)
    if not problem.background.is_zero:
        X, T = traced.grid.mesh()
        background = evaluate(problem.background.term(0), X, T)
        report.measure(
            "characteristics_background", float(np.max(np.abs(traced.values - background))), tolerance
        )


def check_conditions(config: ProblemConfig) -> ConditionReport:
    """
    Run every condition check for a configuration.

    Construction errors of one stage are recorded as FAIL and the stages
    depending on it are SKIPped.
    """
    report = ConditionReport()
    tolerances = config.tolerances

    try:
        problem = config.to_problem()
    except ConditionError as e:
        report.fail("a0b0_nonzero", e)
        for name in ("front",) + FRONT_ITEMS:
            report.skip(name, "coefficients vanish in the window")
        return report
    report.measure("a0b0_nonzero", problem.check_nonzero_coefficients(), NONZERO_TOLERANCE, below=False)

    if not problem.background.is_zero:
        try:
            report.measure(
                "regular_u0",
                check_regular_residual(problem, 0, config.figure_grid()),
                tolerances.compatibility,
            )
            if len(problem.background.terms) > 1:
                report.measure(
                    "regular_u1",
                    check_regular_residual(problem, 1, config.figure_grid()),
                    tolerances.compatibility,
                )
        except ShockWKBError as e:
            report.fail("regular_u0", e)

    _check_characteristics(config, problem, report)

    try:
        curve = solve_front(problem, config.front.rho, config.front.phi0)
        report.items["front"] = {"status": PASS, "omega_plus": curve.omega_plus}
    except (ConditionError, NumericalError) as e:
        report.fail("front", e)
        for name in FRONT_ITEMS:
            report.skip(name, "front not available")
        return report

    compatibility = check_compatibility(problem, curve)
    report.measure("compatibility", compatibility.max_dev_con, tolerances.compatibility)
    report.measure("b0_x", compatibility.max_dev_b0x, tolerances.compatibility)

    try:
        frame = build_frame(problem, curve)
        report.measure("beta_positive", float(np.min(frame.beta(frame.times()))), 0.0, below=False)
    except ConditionError as e:
        report.fail("beta_positive", e)
        for name in LAYER_ITEMS:
            report.skip(name, "wave frame not available")
        return report

    alpha_set = alphas(problem, curve, frame)
    sups = check_solvability(alpha_set, curve.omega_plus)
    solvable = True
    for name, value in sups.items():
        solvable &= report.measure(f"solvability_{name}", value, tolerances.solvability)
    report.measure("cond_v1", check_cond_v1(problem, curve, frame), tolerances.cond_v1)

    ts = np.linspace(0.0, curve.omega_plus, 101)
    v0_membership = check_membership(V0Term(frame), frame, ts, tolerances.decay)
    report.measure("layer_decay_v0", max(v0_membership.decay_deviation, v0_membership.left_deviation), tolerances.decay)
    if solvable and problem.background.is_zero:
        v1_term = V1Term(alpha_set, config.c1, check=False)
        v1_membership = check_membership(v1_term, frame, ts, tolerances.decay)
        report.measure(
            "layer_decay_v1", max(v1_membership.decay_deviation, v1_membership.left_deviation), tolerances.decay
        )
    else:
        report.skip("layer_decay_v1", "closed-form v1 needs the solvability conditions and a zero background")

    return report


def cmd_check(config: ProblemConfig, out_dir: Optional[Path] = None) -> int:
    """
    Condition report for a configuration.

    Returns:
        0 if every item passes, 3 otherwise
    """
    report = check_conditions(config)
    data = report.to_dict()
    if out_dir is not None:
        write_json(Path(out_dir) / "check.json", data)

    for name, item in report.items.items():
        value = item.get("value")
        shown = f" {value:.3e}" if isinstance(value, float) else ""
        print(f"{item['status']:4} {name}{shown}")
    status = "✅ All conditions hold" if report.passed else "❌ Some conditions fail"
    print(status)
    logger.info(f"Condition check: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_SUCCESS if report.passed else EXIT_CONDITION_FAILURE
