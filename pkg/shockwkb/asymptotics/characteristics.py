"""
Leading regular term u0 by the method of characteristics.

a0*u_t + b0*u*u_x = 0 transports u unchanged along dx/dt = (b0/a0)*u. All
feet are traced together with a fixed-step RK4; a foot-order inversion marks
the gradient catastrophe.
"""

import logging

import numpy as np
from scipy.interpolate import PchipInterpolator

from shockwkb.asymptotics.problem import BurgersProblem, Grid, SampledField
from shockwkb.constants import CHARACTERISTIC_STEPS, CROSSING_TOLERANCE, MIN_FEET
from shockwkb.exceptions import GradientCatastropheError, NumericalError
from shockwkb.exprlang import Expr, evaluate

logger = logging.getLogger(__name__)


def _strictly_increasing(positions: np.ndarray) -> bool:
    return bool(np.all(np.diff(positions) > 0))


class CharacteristicTracer:
    """Vectorized RK4 integration of all characteristic feet at once."""

    def __init__(self, problem: BurgersProblem, feet: np.ndarray, amplitudes: np.ndarray):
        self.problem = problem
        self.feet = feet
        self.amplitudes = amplitudes

    def velocity(self, x: np.ndarray, t: float) -> np.ndarray:
        ratio = evaluate(self.problem.b0, x, t) / evaluate(self.problem.a0, x, t)
        return ratio * self.amplitudes

    def step(self, x: np.ndarray, t: float, h: float) -> np.ndarray:
        k1 = self.velocity(x, t)
        k2 = self.velocity(x + 0.5 * h * k1, t + 0.5 * h)
        k3 = self.velocity(x + 0.5 * h * k2, t + 0.5 * h)
        k4 = self.velocity(x + h * k3, t + h)
        return x + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0

    def first_crossing(self, x: np.ndarray, t: float, h: float) -> float:
        """Bisect the earliest inversion inside [t, t+h] from the last ordered state."""
        lo, hi = 0.0, h
        while hi - lo > CROSSING_TOLERANCE:
            mid = 0.5 * (lo + hi)
            if _strictly_increasing(self.step(x, t, mid)):
                lo = mid
            else:
                hi = mid
        return t + hi


def _foot_range(problem: BurgersProblem, profile: Expr, targets: Grid) -> np.ndarray:
    x_lo, x_hi = float(targets.xs.min()), float(targets.xs.max())
    X, T = problem.window.sample()
    speed_bound = float(np.max(np.abs(evaluate(problem.b0, X, T) / evaluate(problem.a0, X, T))))
    reach = (x_hi - x_lo) + 1.0
    sampled = np.linspace(x_lo - reach, x_hi + reach, MIN_FEET)
    amplitude_bound = float(np.max(np.abs(evaluate(profile, sampled, 0.0))))
    horizon = max(float(targets.ts.max()), 0.0)
    margin = 1.1 * horizon * speed_bound * amplitude_bound + 1e-3 * reach
    count = max(MIN_FEET, 4 * len(targets.xs))
    return np.linspace(x_lo - margin, x_hi + margin, count)


def solve_u0_characteristics(problem: BurgersProblem, profile: Expr, targets: Grid) -> SampledField:
    """
    Solve a0*u_t + b0*u*u_x = 0 with u(x, 0) = profile(x).

    Args:
        problem: Supplies a0, b0 and the window (step size <= T/2000)
        profile: Initial profile f(x); any t-dependence is evaluated at t = 0
        targets: Output grid; output times must be non-negative

    Returns:
        Sampled u0 on the target grid, monotone interpolation between feet

    Raises:
        GradientCatastropheError: Two characteristics cross before the last
            output time; carries the bisected crossing time
    """
    ts = np.asarray(targets.ts, dtype=float)
    if np.any(ts < 0) or np.any(np.diff(ts) < 0):
        raise ValueError("Output times must be non-negative and sorted")

    feet = _foot_range(problem, profile, targets)
    amplitudes = np.asarray(evaluate(profile, feet, 0.0), dtype=float)
    tracer = CharacteristicTracer(problem, feet, amplitudes)
    h_max = problem.T / CHARACTERISTIC_STEPS

    logger.info(
        f"Tracing {len(feet)} characteristics over [{feet[0]:.3g}, {feet[-1]:.3g}] "
        f"to t={ts[-1]:.3g}"
    )

    positions = feet.copy()
    t = 0.0
    values = np.empty((len(ts), len(targets.xs)))
    for k, t_out in enumerate(ts):
        while t_out - t > 1e-14:
            h = min(h_max, t_out - t)
            advanced = tracer.step(positions, t, h)
            if not _strictly_increasing(advanced):
                crossing = tracer.first_crossing(positions, t, h)
                raise GradientCatastropheError(
                    f"Characteristics cross at t={crossing:.6f}; no classical solution beyond",
                    time=crossing,
                )
            positions, t = advanced, t + h
        values[k] = PchipInterpolator(positions, amplitudes, extrapolate=False)(targets.xs)

    if not np.all(np.isfinite(values)):
        raise NumericalError("Target grid not covered by traced characteristics")
    return SampledField("u0", targets, values)
