"""
Discontinuity curve Gamma: x = phi(t) with phi' = rho*b0(t)/a0(phi, t).

The curve keeps the integrator knots (t, phi, phi') and interpolates with a
cubic Hermite spline. phi' itself is always taken from the ODE right-hand
side, and phi'' from differentiating that right-hand side along the curve,
so layer coefficients get exact time derivatives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from shockwkb.asymptotics.problem import BurgersProblem
from shockwkb.constants import (
    A0_VANISHING_THRESHOLD,
    B0X_TOLERANCE,
    FRONT_ATOL,
    FRONT_MAX_STEPS,
    FRONT_RTOL,
)
from shockwkb.exceptions import BlowupError, FrontError, NumericalError
from shockwkb.exprlang import Expr, diff, evaluate, to_text

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class FrontCurve:
    """
    Dense numeric solution of the front ODE on [0, omega_plus].

    Attributes:
        rho: Nonzero constant of the front ODE
        phi0: Initial position phi(0)
        knots: Arrays (t, phi, dphi) at the accepted integrator steps
        omega_minus: Lower end of validity (0; integration runs forward)
        omega_plus: Upper end of validity (T when the whole window is reached)
    """

    def __init__(
        self,
        problem: BurgersProblem,
        rho: float,
        phi0: float,
        t_knots: np.ndarray,
        phi_knots: np.ndarray,
        rtol: float = FRONT_RTOL,
    ):
        self.problem = problem
        self.rho = rho
        self.phi0 = phi0
        self.rtol = rtol
        self.omega_minus = 0.0
        self.omega_plus = float(t_knots[-1])
        phi_knots = np.array(phi_knots, dtype=float)
        phi_knots[0] = phi0
        dphi_knots = self.rhs(phi_knots, t_knots)
        self.knots = (np.asarray(t_knots, dtype=float), phi_knots, np.asarray(dphi_knots))
        self._spline = CubicHermiteSpline(self.knots[0], phi_knots, self.knots[2])

    @property
    def is_complete(self) -> bool:
        """True if the curve covers the whole window [0, T]."""
        return self.omega_plus >= self.problem.T

    def rhs(self, phi: ArrayLike, t: ArrayLike) -> ArrayLike:
        """rho * b0(phi, t) / a0(phi, t)."""
        return self.rho * evaluate(self.problem.b0, phi, t) / evaluate(self.problem.a0, phi, t)

    def _check_range(self, t: ArrayLike) -> None:
        slack = 1e-12 * max(1.0, self.omega_plus)
        if np.any(np.asarray(t) < -slack) or np.any(np.asarray(t) > self.omega_plus + slack):
            raise ValueError(
                f"t outside the validity interval [0, {self.omega_plus:.6g}] of the front"
            )

    def phi(self, t: ArrayLike) -> ArrayLike:
        self._check_range(t)
        value = self._spline(t)
        return float(value) if np.ndim(value) == 0 else value

    def dphi(self, t: ArrayLike) -> ArrayLike:
        return self.rhs(self.phi(t), t)

    def trace(self, expr: Expr, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        """
        Value of expr(phi(t), t) and its total time derivative along the curve.

        Returns:
            (value, e_x * phi' + e_t)
        """
        phi = self.phi(t)
        value = evaluate(expr, phi, t)
        rate = evaluate(diff(expr, "x"), phi, t) * self.dphi(t) + evaluate(diff(expr, "t"), phi, t)
        return value, rate

    def at(self, expr: Expr, t: ArrayLike) -> ArrayLike:
        """Value of expr(phi(t), t)."""
        return evaluate(expr, self.phi(t), t)

    def ddphi(self, t: ArrayLike) -> ArrayLike:
        """phi'' = rho * (b0' a0 - b0 a0') / a0^2 with total derivatives along the curve."""
        a0, da0 = self.trace(self.problem.a0, t)
        b0, db0 = self.trace(self.problem.b0, t)
        return self.rho * (db0 * a0 - b0 * da0) / a0**2

    def rows(self) -> Iterator[Tuple[float, float, float]]:
        """(t, phi, dphi) knot rows."""
        for t, phi, dphi in zip(*self.knots):
            yield float(t), float(phi), float(dphi)


def check_b0_independent_of_x(problem: BurgersProblem) -> float:
    """
    Sampled sup of |b0_x| over the window.

    Raises:
        FrontError: B0_DEPENDS_ON_X if the sup exceeds 1e-10
    """
    X, T = problem.window.sample()
    deviation = float(np.max(np.abs(evaluate(diff(problem.b0, "x"), X, T))))
    if deviation > B0X_TOLERANCE:
        raise FrontError(
            f"b0 = {to_text(problem.b0)} depends on x (sup |b0_x| = {deviation:.3e}); "
            "the front construction requires b0 = b0(t)",
            code="B0_DEPENDS_ON_X",
            deviation=deviation,
        )
    return deviation


def solve_front(
    p: BurgersProblem,
    rho: float,
    phi0: float,
    rtol: float = FRONT_RTOL,
    allow_truncated: bool = False,
) -> FrontCurve:
    """
    Integrate the discontinuity-curve ODE from phi(0) = phi0.

    Args:
        p: Problem (a0, b0 and the window)
        rho: Nonzero constant of the front ODE
        phi0: Initial position, inside the window
        rtol: Relative tolerance of the adaptive RK4(5) integrator
        allow_truncated: Return a curve with omega_plus < T instead of raising

    Returns:
        FrontCurve valid on [0, omega_plus]

    Raises:
        FrontError: RHO_ZERO, B0_DEPENDS_ON_X, or phi0 outside the window
        BlowupError: BLOWUP_BEFORE_T when a0(phi, t) -> 0 or phi leaves the window
    """
    if rho == 0:
        raise FrontError("rho must be nonzero", code="RHO_ZERO")
    check_b0_independent_of_x(p)
    window = p.window
    if not window.contains(phi0):
        raise FrontError(
            f"phi0={phi0} lies outside the window [{window.x_min}, {window.x_max}]",
            code="PHI0_OUTSIDE_WINDOW",
        )

    def rhs(t, y):
        a0 = evaluate(p.a0, y[0], t)
        if a0 == 0.0:
            return [np.inf]
        return [rho * evaluate(p.b0, y[0], t) / a0]

    def a0_vanishing(t, y):
        return abs(evaluate(p.a0, y[0], t)) - A0_VANISHING_THRESHOLD

    def window_escape(t, y):
        return (y[0] - window.x_min) * (window.x_max - y[0])

    a0_vanishing.terminal = True
    window_escape.terminal = True

    solution = solve_ivp(
        rhs,
        (0.0, p.T),
        [phi0],
        method="RK45",
        rtol=rtol,
        atol=FRONT_ATOL,
        max_step=p.T / FRONT_MAX_STEPS,
        events=[a0_vanishing, window_escape],
    )
    if solution.status == -1 or len(solution.t) < 2:
        raise NumericalError(f"Front integration failed: {solution.message}")

    curve = FrontCurve(p, rho, phi0, solution.t, solution.y[0], rtol=rtol)
    logger.info(
        f"Front solved: rho={rho}, phi0={phi0}, {len(solution.t)} knots, "
        f"phi({curve.omega_plus:.6g})={solution.y[0][-1]:.10g}"
    )

    if not curve.is_complete:
        reason = "a0(phi, t) vanishes" if len(solution.t_events[0]) else "phi leaves the window"
        if not allow_truncated:
            raise BlowupError(
                f"Front stops before T={p.T}: {reason} at t={curve.omega_plus:.6g}",
                omega_plus=curve.omega_plus,
            )
        logger.warning(f"Front validity truncated to [0, {curve.omega_plus:.6g}]: {reason}")
    return curve


@dataclass(frozen=True)
class CompatibilityReport:
    """Deviations of the coefficient conditions along the front."""

    max_dev_con: float
    max_dev_b0x: float

    def to_dict(self) -> dict:
        return {"max_dev_con": self.max_dev_con, "max_dev_b0x": self.max_dev_b0x}


def check_compatibility(p: BurgersProblem, curve: FrontCurve) -> CompatibilityReport:
    """
    Measure a0(phi,t)*b0'(t) - rho*b0(t)^2*a0_x(phi,t) and b0_x(phi,t) at the knots.

    Thresholding is the caller's policy.
    """
    t = curve.knots[0]
    a0 = curve.at(p.a0, t)
    b0, db0 = curve.trace(p.b0, t)
    a0_x = curve.at(diff(p.a0, "x"), t)
    con = a0 * db0 - curve.rho * b0**2 * a0_x
    b0_x = curve.at(diff(p.b0, "x"), t)
    return CompatibilityReport(
        max_dev_con=float(np.max(np.abs(con))),
        max_dev_b0x=float(np.max(np.abs(b0_x))),
    )
