"""
Assembled step-like asymptotic solutions Y_0 = u0 + v0 and
Y_1 = u0 + eps*u1 + v0 + eps*v1, with tau = (x - phi(t))/eps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from shockwkb.asymptotics.front import FrontCurve
from shockwkb.asymptotics.layer import AlphaSet, LayerTerm, V0Term, V1Term, alphas
from shockwkb.asymptotics.problem import BurgersProblem
from shockwkb.constants import VALID_ORDERS
from shockwkb.exceptions import ConditionError
from shockwkb.exprlang import Expr, diff, evaluate

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class SolutionFields:
    """u and the partial derivatives entering the PDE residual."""

    u: ArrayLike
    u_x: ArrayLike
    u_xx: ArrayLike
    u_t: ArrayLike


class RegularPart:
    """U = sum_j eps^j u_j with exact derivatives."""

    def __init__(self, terms: Sequence[Expr]):
        self.terms = tuple(terms)
        self._dx = tuple(diff(term, "x") for term in self.terms)
        self._dxx = tuple(diff(term, "x") for term in self._dx)
        self._dt = tuple(diff(term, "t") for term in self.terms)

    def _sum(self, exprs: Sequence[Expr], x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        total = np.zeros(np.broadcast(np.asarray(x), np.asarray(t)).shape)
        for j, expr in enumerate(exprs):
            total = total + eps**j * evaluate(expr, x, t)
        return total

    def fields(self, x: ArrayLike, t: ArrayLike, eps: float) -> SolutionFields:
        return SolutionFields(
            u=self._sum(self.terms, x, t, eps),
            u_x=self._sum(self._dx, x, t, eps),
            u_xx=self._sum(self._dxx, x, t, eps),
            u_t=self._sum(self._dt, x, t, eps),
        )


class AsymptoticSolution:
    """
    Step-like approximation Y_m(x, t, eps) on the validity interval of the front.

    Derivatives follow the chain rule through tau = (x - phi(t))/eps:
        u_x = U_x + V_tau/eps
        u_xx = U_xx + V_tautau/eps^2
        u_t = U_t + V_t - phi'*V_tau/eps
    """

    def __init__(
        self,
        problem: BurgersProblem,
        curve: FrontCurve,
        layer_terms: Sequence[LayerTerm],
        order: int,
        alpha_set: Optional[AlphaSet] = None,
    ):
        self.problem = problem
        self.curve = curve
        self.frame = layer_terms[0].frame
        self.layer_terms: List[LayerTerm] = list(layer_terms)
        self.order = order
        self.alpha_set = alpha_set
        regular = [problem.background.term(j) for j in range(order + 1)]
        self.regular = RegularPart(regular)

    def tau(self, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        return (np.asarray(x, dtype=float) - self.curve.phi(t)) / eps

    def layer_fields(self, t: ArrayLike, tau: ArrayLike, eps: float) -> SolutionFields:
        """Fields at x = phi(t) + eps*tau; t and tau broadcast (t may be a column)."""
        t = np.asarray(t, dtype=float)
        tau = np.asarray(tau, dtype=float)
        x = self.curve.phi(t) + eps * tau
        return self._fields(x, t, tau, eps)

    def fields(self, x: ArrayLike, t: ArrayLike, eps: float) -> SolutionFields:
        """Fields at (x, t); x and t broadcast."""
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        return self._fields(x, t, self.tau(x, t, eps), eps)

    def _fields(self, x, t, tau, eps: float) -> SolutionFields:
        regular = self.regular.fields(x, t, eps)
        value, d_tau, d_tau2, d_t = 0.0, 0.0, 0.0, 0.0
        for j, term in enumerate(self.layer_terms):
            part = term.evaluate(t, tau)
            weight = eps**j
            value = value + weight * part.value
            d_tau = d_tau + weight * part.d_tau
            d_tau2 = d_tau2 + weight * part.d_tau2
            d_t = d_t + weight * part.d_t
        dphi = self.curve.dphi(t)
        return SolutionFields(
            u=regular.u + value,
            u_x=regular.u_x + d_tau / eps,
            u_xx=regular.u_xx + d_tau2 / eps**2,
            u_t=regular.u_t + d_t - dphi * d_tau / eps,
        )

    def u(self, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        return self.fields(x, t, eps).u

    def layer_component(self, j: int, x: ArrayLike, t: ArrayLike, eps: float) -> ArrayLike:
        """V_j(x, t, eps) = v_j(t, (x - phi(t))/eps), without the eps^j weight."""
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        return self.layer_terms[j].value(t, self.tau(x, t, eps))

    def layer_limits(self, t: ArrayLike, eps: float) -> Tuple[ArrayLike, ArrayLike]:
        """Limits of the singular part as tau -> -inf and tau -> +inf."""
        left = sum(eps**j * term.left_limit(t) for j, term in enumerate(self.layer_terms))
        right = sum(eps**j * term.right_limit(t) for j, term in enumerate(self.layer_terms))
        return left, right

    def far_field(
        self, t: ArrayLike, eps: float, x_left: ArrayLike, x_right: ArrayLike
    ) -> Tuple[ArrayLike, ArrayLike]:
        """Background at x_left/x_right plus the layer limits on the matching side."""
        left, right = self.layer_limits(t, eps)
        return (
            self.regular.fields(x_left, t, eps).u + left,
            self.regular.fields(x_right, t, eps).u + right,
        )


def assemble(
    p: BurgersProblem,
    curve: FrontCurve,
    frame,
    order: int,
    c1: float = 0.0,
    alpha_set: Optional[AlphaSet] = None,
) -> AsymptoticSolution:
    """
    Assemble Y_0 or Y_1.

    Args:
        p: Problem
        curve: Solved front
        frame: Wave frame along the front
        order: 0 or 1
        c1: Integration constant of v1
        alpha_set: Precomputed alpha coefficients (built on demand)

    Raises:
        ValueError: Unsupported order
        ConditionError: Order 1 with a nonzero background
        SolvabilityError: Order 1 and alpha_1..alpha_4 beyond tolerance
    """
    if order not in VALID_ORDERS:
        raise ValueError(f"order must be one of {VALID_ORDERS}, got {order}")

    terms: List[LayerTerm] = [V0Term(frame)]
    if order == 1:
        if not p.background.is_zero:
            raise ConditionError(
                "First-order layer term is available in closed form only for a zero background",
                code="NONZERO_BACKGROUND",
            )
        alpha_set = alpha_set or alphas(p, curve, frame)
        terms.append(V1Term(alpha_set, c1))

    logger.info(f"Assembled Y_{order} (c1={c1})")
    return AsymptoticSolution(p, curve, terms, order, alpha_set)


def step_limit(solution: AsymptoticSolution, x: ArrayLike, t: ArrayLike) -> ArrayLike:
    """
    Vanishing-viscosity limit of Y_0: u0 + 2A left of the front, u0 right of it, u0 + A on it.
    """
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    u0 = evaluate(solution.problem.background.term(0), x, t)
    A = solution.frame.A(t)
    offset = x - solution.curve.phi(t)
    jump = np.where(offset < 0, 2.0 * A, np.where(offset > 0, 0.0, A))
    value = u0 + jump
    return float(value) if np.ndim(value) == 0 else value


def travelling_wave(
    x: ArrayLike, t: ArrayLike, nu: float, amplitude: float, phase: float = 0.0
) -> ArrayLike:
    """
    Classical travelling wave of nu*u_xx = u_t + u*u_x:

        a * (1 - tanh(a*(x - a*t)/(2*nu) + phase))
    """
    x = np.asarray(x, dtype=float)
    value = amplitude * (1.0 - np.tanh(amplitude * (x - amplitude * t) / (2.0 * nu) + phase))
    return float(value) if np.ndim(value) == 0 else value
